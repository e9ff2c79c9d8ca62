#include "covenc/oracle.hpp"

#include "covenc/solver.hpp"

#include <algorithm>
#include <stdexcept>

namespace covenc {

namespace {

void extend_independent(const graph& g, int from, std::vector<int>& current,
                        std::vector<std::uint64_t>& blocked,
                        std::vector<std::vector<int>>& out) {
    out.push_back(current);
    for (int v = from; v <= g.n(); ++v) {
        if ((blocked[static_cast<std::size_t>((v - 1) / 64)] >> ((v - 1) % 64)) & 1) continue;
        current.push_back(v);
        std::vector<std::uint64_t> next = blocked;
        const auto& row = g.adjacency_row(v);
        for (std::size_t w = 0; w < next.size(); ++w) next[w] |= row[w];
        extend_independent(g, v + 1, current, next, out);
        current.pop_back();
    }
}

std::uint64_t splitmix_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

void check_vertex_vars(const graph& g, const std::vector<int>& vertex_vars) {
    if (static_cast<int>(vertex_vars.size()) != g.n())
        throw std::invalid_argument("need one variable per vertex");
    std::vector<int> sorted = vertex_vars;
    std::sort(sorted.begin(), sorted.end());
    if (!sorted.empty() && sorted.front() < 1)
        throw std::invalid_argument("variable indices start at 1");
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("vertex variables must be distinct");
}

// One audit step for a fixed selection, described by per-vertex polarity.
std::optional<isp_violation> audit_selection(solver& s, const graph& g,
                                             const std::vector<int>& vertex_vars,
                                             const std::vector<bool>& on) {
    std::vector<int> assumptions(vertex_vars.size());
    std::vector<int> selected;
    for (int v = 1; v <= g.n(); ++v) {
        bool bit = on[static_cast<std::size_t>(v - 1)];
        assumptions[static_cast<std::size_t>(v - 1)] =
            bit ? vertex_vars[static_cast<std::size_t>(v - 1)]
                : -vertex_vars[static_cast<std::size_t>(v - 1)];
        if (bit) selected.push_back(v);
    }
    bool independent = true;
    for (std::size_t i = 0; i < selected.size() && independent; ++i)
        for (std::size_t j = i + 1; j < selected.size() && independent; ++j)
            if (g.adjacent(selected[i], selected[j])) independent = false;
    bool sat = s.solve(assumptions) == solve_status::sat;
    if (sat == independent) return std::nullopt;
    return isp_violation{std::move(selected), independent, sat};
}

} // namespace

std::vector<std::vector<int>> enumerate_independent_sets(const graph& g) {
    std::vector<std::vector<int>> out;
    std::vector<int> current;
    std::vector<std::uint64_t> blocked((static_cast<std::size_t>(g.n()) + 63) / 64, 0);
    extend_independent(g, 1, current, blocked, out);
    return out;
}

bool is_independent_set(const graph& g, std::span<const int> verts) {
    std::vector<int> sorted(verts.begin(), verts.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("duplicate vertex in candidate set");
    if (!sorted.empty() && (sorted.front() < 1 || sorted.back() > g.n()))
        throw std::out_of_range("vertex outside 1.." + std::to_string(g.n()));
    for (std::size_t i = 0; i < sorted.size(); ++i)
        for (std::size_t j = i + 1; j < sorted.size(); ++j)
            if (g.adjacent(sorted[i], sorted[j])) return false;
    return true;
}

std::optional<isp_violation> audit_is_encoding(const formula& f, const graph& g,
                                               const std::vector<int>& vertex_vars) {
    check_vertex_vars(g, vertex_vars);
    if (g.n() > 30)
        throw std::invalid_argument("exhaustive audit limited to 30 vertices; sample instead");
    solver s(f);
    std::vector<bool> on(static_cast<std::size_t>(g.n()), false);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << g.n()); ++mask) {
        for (int v = 1; v <= g.n(); ++v)
            on[static_cast<std::size_t>(v - 1)] = (mask >> (v - 1)) & 1;
        if (auto bad = audit_selection(s, g, vertex_vars, on)) return bad;
    }
    return std::nullopt;
}

std::optional<isp_violation> audit_is_encoding_sampled(const formula& f, const graph& g,
                                                       const std::vector<int>& vertex_vars,
                                                       int samples, std::uint64_t seed) {
    check_vertex_vars(g, vertex_vars);
    if (samples < 1) throw std::invalid_argument("need at least one sample");
    solver s(f);
    std::uint64_t state = seed;
    std::vector<bool> on(static_cast<std::size_t>(g.n()), false);
    for (int round = 0; round < samples; ++round) {
        std::uint64_t bits = 0;
        for (int v = 1; v <= g.n(); ++v) {
            if ((v - 1) % 64 == 0) bits = splitmix_next(state);
            on[static_cast<std::size_t>(v - 1)] = (bits >> ((v - 1) % 64)) & 1;
        }
        if (auto bad = audit_selection(s, g, vertex_vars, on)) return bad;
    }
    return std::nullopt;
}

std::optional<equisat_violation> audit_equisat(const formula& a, const formula& b,
                                               std::span<const int> shared_vars) {
    std::vector<int> vars(shared_vars.begin(), shared_vars.end());
    std::sort(vars.begin(), vars.end());
    if (!vars.empty() && vars.front() < 1)
        throw std::invalid_argument("variable indices start at 1");
    if (std::adjacent_find(vars.begin(), vars.end()) != vars.end())
        throw std::invalid_argument("shared variables must be distinct");
    if (vars.size() > 30)
        throw std::invalid_argument("projected audit limited to 30 shared variables");
    solver sa(a), sb(b);
    std::vector<int> assumptions(vars.size());
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << vars.size()); ++mask) {
        assignment tau;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            bool bit = (mask >> i) & 1;
            assumptions[i] = bit ? vars[i] : -vars[i];
            tau[vars[i]] = bit;
        }
        bool first = sa.solve(assumptions) == solve_status::sat;
        bool second = sb.solve(assumptions) == solve_status::sat;
        if (first != second) return equisat_violation{std::move(tau), first, second};
    }
    return std::nullopt;
}

} // namespace covenc
