#include "covenc/problems.hpp"

#include "covenc/amo.hpp"
#include "covenc/covers.hpp"
#include "covenc/intervals.hpp"

#include "json.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <tuple>
#include <utility>

namespace covenc {

namespace {

// The occupancy layer recurses all the way down so the block structure is
// exercised at desk-scale horizons and its per-size cost curve flattens early
// instead of riding the cheap direct base case.
constexpr int occupancy_recursion_base = 2;

constexpr long long search_space_guard = 10'000'000;

// Rebuilds a scratch-pool formula inside the main pool: scratch variables
// 1..interface.size() become the given main variables, later ones are
// re-allocated fresh with the prefix pushed onto their name arguments.
void import_scratch(const formula& f, const var_map& scratch, std::span<const int> interface,
                    int prefix, var_map& pool, formula& out) {
    std::vector<int> map(static_cast<std::size_t>(scratch.size()) + 1, 0);
    const int base = static_cast<int>(interface.size());
    for (int v = 1; v <= base; ++v) map[static_cast<std::size_t>(v)] = interface[v - 1];
    for (int v = base + 1; v <= scratch.size(); ++v) {
        const var_name& nm = scratch.name(v);
        std::vector<int> args;
        args.reserve(nm.args.size() + 1);
        args.push_back(prefix);
        args.insert(args.end(), nm.args.begin(), nm.args.end());
        map[static_cast<std::size_t>(v)] = pool.fresh(nm.kind, std::move(args));
    }
    std::vector<int> codes;
    for (const clause& c : f) {
        codes.clear();
        for (int code : c.codes())
            codes.push_back(code > 0 ? map[static_cast<std::size_t>(code)]
                                     : -map[static_cast<std::size_t>(-code)]);
        out.add(clause(codes));
    }
}

void append(formula& out, const formula& extra) {
    for (const clause& c : extra) out.add(c);
}

std::vector<int> vertex_vars(int n) {
    std::vector<int> vars(static_cast<std::size_t>(n));
    std::iota(vars.begin(), vars.end(), 1);
    return vars;
}

// The per-position encoders assume vertex v carries the v-th interval in
// lexicographic order; anything else would silently encode the wrong graph.
std::pair<int, interval_variant> interval_shape(const graph& g) {
    if (!g.has_interval_labels() || !g.positions().has_value())
        throw std::invalid_argument("block strategies need an interval-labeled graph");
    const int n = *g.positions();
    if (n < 2 || g.n() != interval_count(n))
        throw std::invalid_argument("interval labeling does not cover all intervals");
    for (int v = 1; v <= g.n(); ++v)
        if (!(g.label(v) == vertex_interval(n, v)))
            throw std::invalid_argument("interval labels are not in canonical order");
    return {n, infer_interval_variant(g)};
}

struct placement {
    int t = 0;
    int m = 0;
    int var = 0;
};

// Start variables for every feasible (task, start, machine) triple, allocated
// in task-major order. A task whose window admits no start gets none.
std::vector<std::vector<placement>> allocate_starts(const scheduling_instance& inst,
                                                    var_map& pool) {
    std::vector<std::vector<placement>> starts(inst.tasks.size());
    for (std::size_t i = 0; i < inst.tasks.size(); ++i) {
        const auto& tk = inst.tasks[i];
        for (int t = tk.r; t + tk.d <= tk.e; ++t)
            for (int m = 1; m <= inst.machines; ++m)
                starts[i].push_back({t, m, pool.fresh("x", {static_cast<int>(i) + 1, t, m})});
    }
    return starts;
}

void emit_task_alo(const std::vector<std::vector<placement>>& starts, formula& out) {
    for (const auto& ps : starts) {
        std::vector<int> codes;
        codes.reserve(ps.size());
        for (const placement& p : ps) codes.push_back(p.var);
        out.add(clause(codes));
    }
}

}  // namespace

std::string_view strategy_label(isp_strategy s) {
    switch (s) {
        case isp_strategy::direct: return "direct";
        case isp_strategy::clique_cover: return "cliqueCover";
        case isp_strategy::biclique_cover: return "bicliqueCover";
        case isp_strategy::recursive_blocks: return "recursiveBlocks";
        case isp_strategy::block83: return "block83";
    }
    throw std::invalid_argument("unknown encoding strategy");
}

isp_strategy strategy_from_label(std::string_view s) {
    for (const isp_strategy tag :
         {isp_strategy::direct, isp_strategy::clique_cover, isp_strategy::biclique_cover,
          isp_strategy::recursive_blocks, isp_strategy::block83})
        if (s == strategy_label(tag)) return tag;
    throw std::invalid_argument("unknown encoding strategy " + std::string(s));
}

formula encode_independent_set(const graph& g, std::optional<int> k, isp_strategy strategy,
                               var_map& pool) {
    ensure_vertex_vars(pool, g.n());
    formula out;
    switch (strategy) {
        case isp_strategy::direct:
            for (auto [u, v] : g.edges()) out.add(clause{-u, -v});
            break;
        case isp_strategy::clique_cover:
            out = encode_cc_isp(g, greedy_clique_cover(g), pool);
            break;
        case isp_strategy::biclique_cover:
            out = encode_bc_isp(g, greedy_biclique_cover(g), pool);
            break;
        case isp_strategy::recursive_blocks:
        case isp_strategy::block83: {
            const auto [n, variant] = interval_shape(g);
            const std::vector<int> lits = vertex_vars(g.n());
            out = strategy == isp_strategy::recursive_blocks
                      ? encode_interval_isp_recursive({.n = n, .variant = variant}, lits, pool)
                      : encode_interval_isp_block83(n, variant, lits, pool);
            break;
        }
    }
    if (k) append(out, cardinality_equals_k(vertex_vars(g.n()), *k, pool));
    return out;
}

formula encode_vertex_cover(const graph& g, int k, isp_strategy strategy, var_map& pool) {
    const int n = g.n();
    const formula independence = encode_independent_set(g, std::nullopt, strategy, pool);
    formula out;
    std::vector<int> codes;
    for (const clause& c : independence) {
        codes.clear();
        for (int code : c.codes()) codes.push_back(std::abs(code) <= n ? -code : code);
        out.add(clause(codes));
    }
    append(out, cardinality_equals_k(vertex_vars(n), k, pool));
    return out;
}

formula encode_coloring(const graph& g, int k, isp_strategy strategy, var_map& pool) {
    if (k < 1) throw std::invalid_argument("coloring needs at least one color");
    const int n = g.n();
    std::vector<std::vector<int>> color_vars(static_cast<std::size_t>(n) + 1);
    for (int v = 1; v <= n; ++v) {
        color_vars[static_cast<std::size_t>(v)].push_back(0);
        for (int c = 1; c <= k; ++c)
            color_vars[static_cast<std::size_t>(v)].push_back(pool.fresh("x", {v, c}));
    }
    formula out;
    for (int c = 1; c <= k; ++c) {
        var_map scratch;
        const formula copy = encode_independent_set(g, std::nullopt, strategy, scratch);
        std::vector<int> interface(static_cast<std::size_t>(n));
        for (int v = 1; v <= n; ++v)
            interface[static_cast<std::size_t>(v - 1)] = color_vars[static_cast<std::size_t>(v)]
                                                                   [static_cast<std::size_t>(c)];
        import_scratch(copy, scratch, interface, c, pool, out);
    }
    for (int v = 1; v <= n; ++v) {
        std::vector<int> codes(color_vars[static_cast<std::size_t>(v)].begin() + 1,
                               color_vars[static_cast<std::size_t>(v)].end());
        out.add(clause(codes));
    }
    return out;
}

formula encode_clique(const graph& g, int k, isp_strategy strategy, var_map& pool) {
    return encode_independent_set(complement(g), k, strategy, pool);
}

void validate_instance(const scheduling_instance& inst) {
    if (inst.machines < 0) throw std::invalid_argument("machine count must be nonnegative");
    if (inst.horizon < 0) throw std::invalid_argument("horizon must be nonnegative");
    for (const auto& t : inst.tasks) {
        if (t.d < 1) throw std::invalid_argument("task duration must be at least 1");
        if (t.r < 1 || t.r > t.e || t.e > inst.horizon)
            throw std::invalid_argument("task window must satisfy 1 <= r <= e <= T");
    }
}

formula encode_scheduling(const scheduling_instance& inst, var_map& pool) {
    validate_instance(inst);
    const int M = inst.machines;
    const int T = inst.horizon;
    const auto starts = allocate_starts(inst, pool);

    // Occupancy variables per machine, one per interval of [1, T] in rank
    // order. Intervals no placement maps to stay pure negatives in the
    // disjointness layer, so they never block a model.
    std::vector<std::vector<int>> occupancy(static_cast<std::size_t>(M) + 1);
    if (T >= 2)
        for (int m = 1; m <= M; ++m)
            for (int a = 1; a < T; ++a)
                for (int b = a + 1; b <= T; ++b)
                    occupancy[static_cast<std::size_t>(m)].push_back(pool.fresh("y", {m, a, b}));

    formula out;
    for (std::size_t i = 0; i < starts.size(); ++i)
        for (const placement& p : starts[i]) {
            const int d = inst.tasks[i].d;
            const int slot = interval_vertex(T, p.t, p.t + d) - 1;
            out.add(clause{-p.var, occupancy[static_cast<std::size_t>(p.m)]
                                            [static_cast<std::size_t>(slot)]});
        }

    // Same duration, same start, same machine would collapse to one occupancy
    // variable, so that case is excluded up front.
    std::map<std::tuple<int, int, int>, std::vector<int>> same_interval;
    for (std::size_t i = 0; i < starts.size(); ++i)
        for (const placement& p : starts[i])
            same_interval[{inst.tasks[i].d, p.t, p.m}].push_back(p.var);
    for (const auto& [key, lits] : same_interval)
        if (lits.size() >= 2) append(out, amo_product(lits, pool));

    emit_task_alo(starts, out);

    if (T >= 2)
        for (int m = 1; m <= M; ++m) {
            var_map scratch;
            for (int a = 1; a < T; ++a)
                for (int b = a + 1; b <= T; ++b) scratch.fresh("y", {a, b});
            const formula disjoint = encode_interval_isp_recursive(
                {.n = T,
                 .variant = interval_variant::overlap2,
                 .recursion_base = occupancy_recursion_base},
                vertex_vars(interval_count(T)), scratch);
            import_scratch(disjoint, scratch, occupancy[static_cast<std::size_t>(m)], m, pool,
                           out);
        }
    return out;
}

formula encode_scheduling_pairwise(const scheduling_instance& inst, var_map& pool) {
    validate_instance(inst);
    const auto starts = allocate_starts(inst, pool);
    formula out;
    struct slot {
        int var;
        int t;
        int d;
    };
    for (int m = 1; m <= inst.machines; ++m) {
        std::vector<slot> placed;
        for (std::size_t i = 0; i < starts.size(); ++i)
            for (const placement& p : starts[i])
                if (p.m == m) placed.push_back({p.var, p.t, inst.tasks[i].d});
        for (std::size_t a = 0; a < placed.size(); ++a)
            for (std::size_t b = a + 1; b < placed.size(); ++b)
                if (placed[a].t < placed[b].t + placed[b].d &&
                    placed[b].t < placed[a].t + placed[a].d)
                    out.add(clause{-placed[a].var, -placed[b].var});
    }
    emit_task_alo(starts, out);
    return out;
}

std::optional<std::vector<schedule_slot>> brute_force_schedule(
    const scheduling_instance& inst) {
    validate_instance(inst);
    const int N = static_cast<int>(inst.tasks.size());
    const int T = inst.horizon;
    std::vector<std::vector<schedule_slot>> options(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) {
        const auto& tk = inst.tasks[static_cast<std::size_t>(i)];
        for (int t = tk.r; t + tk.d <= tk.e; ++t)
            for (int m = 1; m <= inst.machines; ++m)
                options[static_cast<std::size_t>(i)].push_back({t, m});
        if (options[static_cast<std::size_t>(i)].empty()) return std::nullopt;
    }
    long long space = 1;
    for (const auto& opts : options) {
        space *= static_cast<long long>(opts.size());
        if (space > search_space_guard)
            throw std::invalid_argument("schedule search space exceeds the guard");
    }

    std::vector<std::vector<char>> busy(static_cast<std::size_t>(inst.machines) + 1,
                                        std::vector<char>(static_cast<std::size_t>(T) + 1, 0));
    std::vector<schedule_slot> picked(static_cast<std::size_t>(N));
    const auto fits = [&](int m, int t, int d) {
        for (int u = t; u < t + d; ++u)
            if (busy[static_cast<std::size_t>(m)][static_cast<std::size_t>(u)]) return false;
        return true;
    };
    const auto mark = [&](int m, int t, int d, char v) {
        for (int u = t; u < t + d; ++u) busy[static_cast<std::size_t>(m)][static_cast<std::size_t>(u)] = v;
    };
    const auto place = [&](const auto& self, int i) -> bool {
        if (i == N) return true;
        const int d = inst.tasks[static_cast<std::size_t>(i)].d;
        for (const schedule_slot& slot : options[static_cast<std::size_t>(i)]) {
            if (!fits(slot.machine, slot.start, d)) continue;
            mark(slot.machine, slot.start, d, 1);
            picked[static_cast<std::size_t>(i)] = slot;
            if (self(self, i + 1)) return true;
            mark(slot.machine, slot.start, d, 0);
        }
        return false;
    };
    if (!place(place, 0)) return std::nullopt;
    return picked;
}

std::string to_instance_text(const scheduling_instance& inst) {
    nlohmann::json j;
    j["N"] = inst.tasks.size();
    j["M"] = inst.machines;
    j["T"] = inst.horizon;
    j["tasks"] = nlohmann::json::array();
    for (const auto& t : inst.tasks)
        j["tasks"].push_back({{"d", t.d}, {"r", t.r}, {"e", t.e}});
    return j.dump(2) + "\n";
}

scheduling_instance parse_instance_text(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("instance parse: ") + e.what());
    }
    scheduling_instance inst;
    std::optional<int> declared;
    try {
        if (!j.is_object() || !j.contains("M") || !j.contains("T") || !j.contains("tasks"))
            throw std::invalid_argument("instance needs fields M, T and tasks");
        inst.machines = j.at("M").get<int>();
        inst.horizon = j.at("T").get<int>();
        if (j.contains("N")) declared = j.at("N").get<int>();
        for (const nlohmann::json& t : j.at("tasks"))
            inst.tasks.push_back(
                {t.at("d").get<int>(), t.at("r").get<int>(), t.at("e").get<int>()});
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("instance parse: ") + e.what());
    }
    if (declared && *declared != static_cast<int>(inst.tasks.size()))
        throw std::invalid_argument("N does not match the task list");
    validate_instance(inst);
    return inst;
}

} // namespace covenc
