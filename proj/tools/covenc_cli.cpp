// Command-line front end: graph generation, strategy encoders, cover
// construction, the re-encoder, verification oracles and size statistics.
// Exit codes: 0 success, 1 usage error, 2 verification failure, 3 I/O error.

#include "covenc/bva.hpp"
#include "covenc/cnf.hpp"
#include "covenc/covers.hpp"
#include "covenc/graph.hpp"
#include "covenc/intervals.hpp"
#include "covenc/oracle.hpp"
#include "covenc/problems.hpp"
#include "covenc/solver.hpp"

#include "CLI11.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

using namespace covenc;

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw io_error("cannot read " + path);
    return buf.str();
}

void spill(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open " + path + " for writing");
    out << content;
    out.flush();
    if (!out) throw io_error("cannot write " + path);
}

std::string sibling_map_path(const std::string& cnf_path) {
    const auto slash = cnf_path.find_last_of('/');
    const auto dot = cnf_path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return cnf_path + ".map";
    return cnf_path.substr(0, dot) + ".map";
}

// Shared graph input: an explicit file, or an interval family built in place.
struct graph_input {
    std::string path;
    int n = 0;
    std::string variant = "I";

    void attach(CLI::App* cmd) {
        cmd->add_option("--graph", path, "graph file to read");
        cmd->add_option("--n", n, "positions of an interval graph built in place");
        cmd->add_option("--variant", variant, "interval overlap rule, I or I0");
    }

    [[nodiscard]] graph load() const {
        if (!path.empty()) return parse_graph_text(slurp(path));
        if (n > 0) return build_interval_graph(n, variant_from_label(variant));
        throw std::invalid_argument("need either --graph or --n");
    }
};

std::vector<int> named_vertex_vars(const var_map& pool, int n) {
    std::vector<int> vars(static_cast<std::size_t>(n));
    for (int v = 1; v <= n; ++v) {
        const auto found = pool.find(var_name{"x", {v}});
        if (!found)
            throw std::invalid_argument("variable map has no entry for vertex " +
                                        std::to_string(v));
        vars[static_cast<std::size_t>(v - 1)] = *found;
    }
    return vars;
}

void print_violation(const isp_violation& bad) {
    std::cout << "violation selected=";
    for (std::size_t i = 0; i < bad.selected.size(); ++i)
        std::cout << (i ? "," : "") << bad.selected[i];
    if (bad.selected.empty()) std::cout << "none";
    std::cout << " independent=" << (bad.independent ? 1 : 0)
              << " encoding_sat=" << (bad.encoding_sat ? 1 : 0) << "\n";
}

int run_gen_graph(const std::string& family, int n, int a, int b, double p,
                  std::uint64_t seed, const std::string& variant, const std::string& out) {
    graph g(0);
    if (family == "interval") g = build_interval_graph(n, variant_from_label(variant));
    else if (family == "complete") g = complete_graph(n);
    else if (family == "bipartite") g = complete_bipartite(a, b);
    else g = random_graph(n, p, seed);
    spill(out, to_graph_text(g));
    std::cout << "family=" << family << " vertices=" << g.n() << " edges=" << g.edge_count()
              << " out=" << out << "\n";
    return 0;
}

int run_encode(const graph_input& in, const std::string& strategy, std::optional<int> k,
               const std::string& out, std::string map_path) {
    const graph g = in.load();
    var_map pool;
    const formula f = encode_independent_set(g, k, strategy_from_label(strategy), pool);
    if (map_path.empty()) map_path = sibling_map_path(out);
    spill(out, to_dimacs(f));
    spill(map_path, pool.to_sidecar());
    std::cout << "strategy=" << strategy << " vertices=" << g.n() << " vars=" << pool.size()
              << " clauses=" << f.size();
    if (in.path.empty()) std::cout << " n=" << in.n << " variant=" << in.variant;
    if (k) std::cout << " k=" << *k;
    std::cout << " out=" << out << " map=" << map_path << "\n";
    return 0;
}

int run_cover(const graph_input& in, const std::string& kind, const std::string& method,
              const std::string& out) {
    std::string text;
    std::size_t count = 0;
    std::size_t weight = 0;
    if (kind == "clique") {
        if (method != "greedy" && in.n <= 0)
            throw std::invalid_argument("structured clique covers need --n");
        const clique_cover cover = method == "greedy" ? greedy_clique_cover(in.load())
                                                      : interval_clique_cover(in.n);
        count = cover.cliques.size();
        for (const auto& c : cover.cliques) weight += c.size();
        text = to_cover_text(cover);
    } else {
        biclique_cover cover;
        if (method == "greedy") cover = greedy_biclique_cover(in.load());
        else if (in.n > 0) cover = kn_recursive_biclique_cover(in.n);
        else throw std::invalid_argument("structured biclique covers need --n");
        count = cover.bicliques.size();
        weight = cover_weight(cover);
        text = to_cover_text(cover);
    }
    spill(out, text);
    std::cout << "kind=" << kind << " method=" << method << " count=" << count
              << " weight=" << weight << " out=" << out << "\n";
    return 0;
}

int run_bva(const std::string& in_path, const std::string& out_path, int min_gain,
            std::uint64_t max_steps) {
    const formula f = parse_dimacs(slurp(in_path));
    var_map pool;
    while (pool.size() < f.max_var()) pool.fresh("x", {pool.size() + 1});
    const bva_result result = bva_reencode(f, pool, {.max_steps = max_steps, .min_gain = min_gain});
    for (std::size_t i = 0; i < result.steps.size(); ++i) {
        const bva_step_record& s = result.steps[i];
        std::cout << "step=" << i + 1 << " l=" << s.l_size << " gamma=" << s.gamma_size
                  << " gain=" << s.gain << " var=" << s.new_var << "\n";
    }
    spill(out_path, to_dimacs(result.f));
    spill(sibling_map_path(out_path), pool.to_sidecar());
    std::cout << "steps=" << result.steps.size() << " clauses_in=" << f.size()
              << " clauses_out=" << result.f.size() << " vars=" << pool.size()
              << " out=" << out_path << "\n";
    return 0;
}

int run_verify_isp(const std::string& graph_path, const std::string& cnf_path,
                   const std::string& map_path, const std::string& mode, int samples,
                   std::optional<std::uint64_t> seed) {
    const graph g = parse_graph_text(slurp(graph_path));
    const formula f = parse_dimacs(slurp(cnf_path));
    const var_map pool = var_map::parse_sidecar(slurp(map_path));
    const std::vector<int> vars = named_vertex_vars(pool, g.n());
    std::optional<isp_violation> bad;
    if (mode == "exhaustive") {
        bad = audit_is_encoding(f, g, vars);
    } else {
        if (!seed) throw std::invalid_argument("sampled mode needs --seed");
        bad = audit_is_encoding_sampled(f, g, vars, samples, *seed);
    }
    if (bad) {
        print_violation(*bad);
        return 2;
    }
    std::cout << "verified=isp mode=" << mode << " vertices=" << g.n()
              << " clauses=" << f.size() << "\n";
    return 0;
}

int run_verify_equisat(const std::string& a_path, const std::string& b_path, int shared) {
    const formula a = parse_dimacs(slurp(a_path));
    const formula b = parse_dimacs(slurp(b_path));
    std::vector<int> vars(static_cast<std::size_t>(shared));
    std::iota(vars.begin(), vars.end(), 1);
    const auto bad = audit_equisat(a, b, vars);
    if (bad) {
        std::cout << "violation first_sat=" << (bad->first_sat ? 1 : 0)
                  << " second_sat=" << (bad->second_sat ? 1 : 0) << "\n";
        return 2;
    }
    std::cout << "verified=equisat shared=" << shared << "\n";
    return 0;
}

int run_verify_schedule(const std::string& instance_path) {
    const scheduling_instance inst = parse_instance_text(slurp(instance_path));
    var_map pool;
    const bool encoded = solver(encode_scheduling(inst, pool)).solve() == solve_status::sat;
    const bool reference = brute_force_schedule(inst).has_value();
    if (encoded != reference) {
        std::cout << "violation encoding_sat=" << (encoded ? 1 : 0)
                  << " reference_feasible=" << (reference ? 1 : 0) << "\n";
        return 2;
    }
    std::cout << "verified=schedule tasks=" << inst.tasks.size()
              << " feasible=" << (reference ? 1 : 0) << "\n";
    return 0;
}

int run_stats(const graph_input& in) {
    const graph g = in.load();
    std::vector<isp_strategy> strategies{isp_strategy::direct, isp_strategy::clique_cover,
                                         isp_strategy::biclique_cover};
    if (g.has_interval_labels() && g.positions().has_value()) {
        strategies.push_back(isp_strategy::recursive_blocks);
        strategies.push_back(isp_strategy::block83);
    }
    for (const isp_strategy s : strategies) {
        var_map pool;
        const formula f = encode_independent_set(g, std::nullopt, s, pool);
        std::cout << "strategy=" << strategy_label(s) << " vertices=" << g.n()
                  << " vars=" << pool.size() << " clauses=" << f.size() << "\n";
    }
    return 0;
}

int run_schedule(const std::string& instance_path, const std::string& out, std::string map_path,
                 bool baseline) {
    const scheduling_instance inst = parse_instance_text(slurp(instance_path));
    var_map pool;
    const formula f =
        baseline ? encode_scheduling_pairwise(inst, pool) : encode_scheduling(inst, pool);
    if (map_path.empty()) map_path = sibling_map_path(out);
    spill(out, to_dimacs(f));
    spill(map_path, pool.to_sidecar());
    std::cout << "encoder=" << (baseline ? "pairwise" : "occupancy")
              << " tasks=" << inst.tasks.size() << " machines=" << inst.machines
              << " horizon=" << inst.horizon << " vars=" << pool.size()
              << " clauses=" << f.size() << " out=" << out << " map=" << map_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"constraint-to-CNF encoders and verification oracles"};
    app.require_subcommand(1);

    // gen-graph
    CLI::App* gen = app.add_subcommand("gen-graph", "write a graph file");
    gen->require_subcommand(1);
    int gen_n = 0, gen_a = 0, gen_b = 0;
    double gen_p = 0.5;
    std::uint64_t gen_seed = 0;
    std::string gen_variant = "I", gen_out;
    CLI::App* gi = gen->add_subcommand("interval", "discrete interval conflict graph");
    gi->add_option("--n", gen_n, "positions")->required();
    gi->add_option("--variant", gen_variant, "overlap rule, I or I0");
    gi->add_option("--out", gen_out, "output file")->required();
    CLI::App* gc = gen->add_subcommand("complete", "complete graph");
    gc->add_option("--n", gen_n, "vertices")->required();
    gc->add_option("--out", gen_out, "output file")->required();
    CLI::App* gb = gen->add_subcommand("bipartite", "complete bipartite graph");
    gb->add_option("--a", gen_a, "left side")->required();
    gb->add_option("--b", gen_b, "right side")->required();
    gb->add_option("--out", gen_out, "output file")->required();
    CLI::App* gr = gen->add_subcommand("random", "Erdos-Renyi graph");
    gr->add_option("--n", gen_n, "vertices")->required();
    gr->add_option("--p", gen_p, "edge probability")->required();
    gr->add_option("--seed", gen_seed, "generator seed")->required();
    gr->add_option("--out", gen_out, "output file")->required();

    // encode
    CLI::App* enc = app.add_subcommand("encode", "encode independence to DIMACS");
    graph_input enc_in;
    enc_in.attach(enc);
    std::string enc_strategy, enc_out, enc_map;
    int enc_k = 0;
    enc->add_option("--strategy", enc_strategy, "direct, cliqueCover, bicliqueCover, recursiveBlocks or block83")
        ->required();
    CLI::Option* enc_k_opt = enc->add_option("--k", enc_k, "exact selection size");
    enc->add_option("--out", enc_out, "DIMACS output")->required();
    enc->add_option("--map", enc_map, "sidecar output, defaults next to --out");

    // cover
    CLI::App* cov = app.add_subcommand("cover", "write a clique or biclique cover");
    graph_input cov_in;
    cov_in.attach(cov);
    std::string cov_kind, cov_method = "greedy", cov_out;
    cov->add_option("--kind", cov_kind, "clique or biclique")
        ->required()
        ->check(CLI::IsMember({"clique", "biclique"}));
    cov->add_option("--method", cov_method, "greedy or structured")
        ->check(CLI::IsMember({"greedy", "structured"}));
    cov->add_option("--out", cov_out, "output file")->required();

    // bva
    CLI::App* bva = app.add_subcommand("bva", "greedy re-encoding with a step log");
    std::string bva_in, bva_out;
    int bva_min_gain = 1;
    std::uint64_t bva_max_steps = 1'000'000;
    bva->add_option("--in", bva_in, "DIMACS input")->required();
    bva->add_option("--out", bva_out, "DIMACS output")->required();
    bva->add_option("--min-gain", bva_min_gain, "stop below this per-step gain");
    bva->add_option("--max-steps", bva_max_steps, "step budget");

    // verify
    CLI::App* ver = app.add_subcommand("verify", "run a verification oracle");
    ver->require_subcommand(1);
    CLI::App* visp = ver->add_subcommand("isp", "audit an independence encoding");
    std::string visp_graph, visp_cnf, visp_map, visp_mode = "exhaustive";
    int visp_samples = 10000;
    std::uint64_t visp_seed = 0;
    visp->add_option("--graph", visp_graph, "graph file")->required();
    visp->add_option("--cnf", visp_cnf, "DIMACS file")->required();
    visp->add_option("--map", visp_map, "sidecar file")->required();
    visp->add_option("--mode", visp_mode, "exhaustive or sampled")
        ->check(CLI::IsMember({"exhaustive", "sampled"}));
    visp->add_option("--samples", visp_samples, "assignments to sample");
    CLI::Option* visp_seed_opt = visp->add_option("--seed", visp_seed, "sampling seed");
    CLI::App* veq = ver->add_subcommand("equisat", "projected equisatisfiability");
    std::string veq_a, veq_b;
    int veq_shared = 0;
    veq->add_option("--a", veq_a, "first DIMACS file")->required();
    veq->add_option("--b", veq_b, "second DIMACS file")->required();
    veq->add_option("--shared", veq_shared, "shared variables 1..N")->required();
    CLI::App* vsched = ver->add_subcommand("schedule", "encoder versus exhaustive scheduler");
    std::string vsched_instance;
    vsched->add_option("--instance", vsched_instance, "instance file")->required();

    // stats
    CLI::App* st = app.add_subcommand("stats", "clause counts across strategies");
    graph_input st_in;
    st_in.attach(st);

    // schedule
    CLI::App* sch = app.add_subcommand("schedule", "encode a scheduling instance");
    std::string sch_instance, sch_out, sch_map;
    bool sch_baseline = false;
    sch->add_option("--instance", sch_instance, "instance file")->required();
    sch->add_option("--out", sch_out, "DIMACS output")->required();
    sch->add_option("--map", sch_map, "sidecar output, defaults next to --out");
    sch->add_flag("--baseline", sch_baseline, "pairwise baseline encoder");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*gi) return run_gen_graph("interval", gen_n, 0, 0, 0, 0, gen_variant, gen_out);
        if (*gc) return run_gen_graph("complete", gen_n, 0, 0, 0, 0, gen_variant, gen_out);
        if (*gb) return run_gen_graph("bipartite", 0, gen_a, gen_b, 0, 0, gen_variant, gen_out);
        if (*gr) return run_gen_graph("random", gen_n, 0, 0, gen_p, gen_seed, gen_variant, gen_out);
        if (*enc)
            return run_encode(enc_in, enc_strategy,
                              enc_k_opt->count() ? std::optional<int>(enc_k) : std::nullopt,
                              enc_out, enc_map);
        if (*cov) return run_cover(cov_in, cov_kind, cov_method, cov_out);
        if (*bva) return run_bva(bva_in, bva_out, bva_min_gain, bva_max_steps);
        if (*visp)
            return run_verify_isp(visp_graph, visp_cnf, visp_map, visp_mode, visp_samples,
                                  visp_seed_opt->count()
                                      ? std::optional<std::uint64_t>(visp_seed)
                                      : std::nullopt);
        if (*veq) return run_verify_equisat(veq_a, veq_b, veq_shared);
        if (*vsched) return run_verify_schedule(vsched_instance);
        if (*st) return run_stats(st_in);
        if (*sch) return run_schedule(sch_instance, sch_out, sch_map, sch_baseline);
        std::cerr << "no subcommand selected\n";
        return 1;
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
