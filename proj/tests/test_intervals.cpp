#include "covenc/intervals.hpp"

#include "covenc/graph.hpp"
#include "covenc/oracle.hpp"
#include "covenc/solver.hpp"
#include "doctest.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

using namespace covenc;

namespace {

// Pool holding one selector variable per interval, so identity literals line
// up with the vertices of build_interval_graph.
var_map interval_pool(int n) {
    var_map pool;
    for (int i = 1; i < n; ++i)
        for (int j = i + 1; j <= n; ++j) pool.fresh("iv", {i, j});
    return pool;
}

std::vector<int> identity_lits(int count) {
    std::vector<int> lits(count);
    std::iota(lits.begin(), lits.end(), 1);
    return lits;
}

int rank(int n, int i, int j) { return interval_vertex(n, i, j) - 1; }

unsigned long long choose2(unsigned long long x) { return x * (x - 1) / 2; }
unsigned long long choose4(unsigned long long x) {
    return x * (x - 1) * (x - 2) * (x - 3) / 24;
}

unsigned long long overlap1_edges(int n) {
    return choose2(choose2(n)) - choose4(n);
}

// Default split mirrored from the encoder, for classify_edge.
int default_block_size(int n) {
    const int lg = static_cast<int>(std::bit_width(static_cast<unsigned>(n))) - 1;
    const int k = std::max(2, std::min(n - 1, lg));
    return (n + k - 1) / k;
}

formula merge(const formula& a, const formula& b) {
    formula out = a;
    for (const clause& c : b) out.add(c);
    return out;
}

// Restricting to exactly the selection {u, v} must contradict the formula
// exactly on conflicting pairs.
void check_pair_coverage(const formula& f, int n, interval_variant v) {
    const graph g = build_interval_graph(n, v);
    const int m = g.n();
    solver sv(f);
    std::vector<int> assumps(m);
    for (int u = 1; u <= m; ++u) {
        for (int w = 1; w <= m; ++w) assumps[w - 1] = -w;
        assumps[u - 1] = u;
        for (int w = u + 1; w <= m; ++w) {
            assumps[w - 1] = w;
            const bool sat = sv.solve(assumps) == solve_status::sat;
            REQUIRE(sat == !g.adjacent(u, w));
            assumps[w - 1] = -w;
        }
    }
}

}  // namespace

TEST_SUITE("intervals") {

TEST_CASE("position instance allocation") {
    var_map pool;
    const ipt_instance inst = make_ipt_instance(4, pool);
    CHECK(inst.n == 4);
    CHECK(pool.size() == 16);
    CHECK(pool.name(inst.x[rank(4, 1, 2)]) == var_name{"x", {1, 2}});
    CHECK(pool.name(inst.x[rank(4, 3, 4)]) == var_name{"x", {3, 4}});
    CHECK(pool.name(inst.t[2]) == var_name{"t", {3}});
    CHECK(pool.name(inst.z[rank(4, 2, 4)]) == var_name{"z", {2, 4}});
    CHECK_THROWS_AS((void)make_ipt_instance(1, pool), std::invalid_argument);

    ipt_instance broken = inst;
    broken.t.pop_back();
    CHECK_THROWS_AS((void)encode_nip(broken), std::invalid_argument);
    broken = inst;
    broken.z[0] = 0;
    CHECK_THROWS_AS((void)encode_ipt(broken), std::invalid_argument);
    CHECK(encode_nip(broken).size() > 0);   // nip never reads z
}

TEST_CASE("naive coverage formula") {
    var_map pool;
    const ipt_instance two = make_ipt_instance(2, pool);
    const formula nip2 = encode_nip(two);
    // Two coverage long clauses and two implications around the one interval.
    const formula expected{{-2, 1}, {-3, 1}, {-1, 2}, {-1, 3}};
    CHECK(nip2 == expected);

    for (int n = 2; n <= 8; ++n) {
        var_map p2;
        const formula f = encode_nip(make_ipt_instance(n, p2));
        std::size_t want = static_cast<std::size_t>(n);
        for (int i = 1; i < n; ++i)
            for (int j = i + 1; j <= n; ++j) want += static_cast<std::size_t>(j - i + 1);
        CHECK(f.size() == want);
    }
    var_map p3;
    CHECK(encode_nip(make_ipt_instance(3, p3)).size() == 10);
}

TEST_CASE("naive coverage forces covered positions") {
    var_map pool;
    const ipt_instance inst = make_ipt_instance(9, pool);
    solver sv(encode_nip(inst));
    std::vector<int> assumps;
    for (int i = 1; i < 9; ++i)
        for (int j = i + 1; j <= 9; ++j) {
            const bool on = (i == 2 && j == 4) || (i == 7 && j == 9);
            assumps.push_back(on ? inst.x[rank(9, i, j)] : -inst.x[rank(9, i, j)]);
        }
    const std::vector<bool> covered{false, true, true, true, false, false, true, true, true};
    std::vector<int> full = assumps;
    for (int l = 1; l <= 9; ++l) full.push_back(covered[l - 1] ? inst.t[l - 1] : -inst.t[l - 1]);
    CHECK(sv.solve(full) == solve_status::sat);
    for (int l = 1; l <= 9; ++l) {
        std::vector<int> probe = assumps;
        probe.push_back(covered[l - 1] ? -inst.t[l - 1] : inst.t[l - 1]);
        CHECK(sv.solve(probe) == solve_status::unsat);
    }
}

TEST_CASE("chained coverage formula") {
    var_map pool;
    const ipt_instance two = make_ipt_instance(2, pool);
    const formula ipt2 = encode_ipt(two);
    // Both boundary extensions of [1,2] fall away, leaving the selection
    // literal alone in the trace-back clause.
    const formula expected{{-2, 1}, {-3, 1}, {-1, 4}, {-4, 2}, {-4, 3}, {-4, 1}};
    CHECK(ipt2 == expected);

    for (int n = 2; n <= 24; ++n) {
        var_map p2;
        const formula f = encode_ipt(make_ipt_instance(n, p2));
        CHECK(f.size() == static_cast<std::size_t>(2 * n * n - n));
        CHECK(f.size() <= static_cast<std::size_t>(6 * n * n));
    }
}

TEST_CASE("coverage encodings agree on restriction satisfiability") {
    for (int n = 2; n <= 5; ++n) {
        var_map pool;
        const ipt_instance inst = make_ipt_instance(n, pool);
        const formula nip = encode_nip(inst);
        solver sv(encode_ipt(inst));
        const int nx = static_cast<int>(inst.x.size());
        const int bits = nx + n;
        for (std::uint32_t mask = 0; mask < (1u << bits); ++mask) {
            assignment tau;
            std::vector<int> assumps;
            for (int p = 0; p < nx; ++p) {
                const bool on = (mask >> p) & 1u;
                tau[inst.x[p]] = on;
                assumps.push_back(on ? inst.x[p] : -inst.x[p]);
            }
            for (int l = 0; l < n; ++l) {
                const bool on = (mask >> (nx + l)) & 1u;
                tau[inst.t[l]] = on;
                assumps.push_back(on ? inst.t[l] : -inst.t[l]);
            }
            const bool nip_sat = evaluates_true(nip, tau);
            const bool ipt_sat = sv.solve(assumps) == solve_status::sat;
            REQUIRE(nip_sat == ipt_sat);
        }
    }
}

TEST_CASE("chain variables mirror coverage exactly") {
    for (int n = 2; n <= 5; ++n) {
        var_map pool;
        const ipt_instance inst = make_ipt_instance(n, pool);
        solver sv(encode_ipt(inst));
        const int nx = static_cast<int>(inst.x.size());
        for (std::uint32_t mask = 0; mask < (1u << nx); ++mask) {
            std::vector<int> assumps;
            std::vector<bool> covered(n + 1, false);
            for (int p = 0; p < nx; ++p) {
                const bool on = (mask >> p) & 1u;
                assumps.push_back(on ? inst.x[p] : -inst.x[p]);
                if (on) {
                    const interval iv = vertex_interval(n, p + 1);
                    for (int l = iv.lo; l <= iv.hi; ++l) covered[l] = true;
                }
            }
            for (int l = 1; l <= n; ++l)
                assumps.push_back(covered[l] ? inst.t[l - 1] : -inst.t[l - 1]);
            // Expected chain value: some selected interval contains [a,b].
            std::vector<int> expected;
            for (int a = 1; a < n; ++a)
                for (int b = a + 1; b <= n; ++b) {
                    bool inside = false;
                    for (int p = 0; p < nx && !inside; ++p) {
                        const interval iv = vertex_interval(n, p + 1);
                        inside = ((mask >> p) & 1u) && iv.lo <= a && b <= iv.hi;
                    }
                    expected.push_back(inside ? inst.z[rank(n, a, b)] : -inst.z[rank(n, a, b)]);
                }
            std::vector<int> full = assumps;
            full.insert(full.end(), expected.begin(), expected.end());
            REQUIRE(sv.solve(full) == solve_status::sat);
            for (std::size_t zi = 0; zi < expected.size(); ++zi) {
                std::vector<int> probe = assumps;
                probe.push_back(-expected[zi]);
                REQUIRE(sv.solve(probe) == solve_status::unsat);
            }
        }
    }
}

TEST_CASE("chain contradicts an uncovered middle position") {
    var_map pool;
    const ipt_instance inst = make_ipt_instance(4, pool);
    solver sv(encode_ipt(inst));
    // Selecting [1,3] while declaring every position uncovered cannot stand.
    std::vector<int> assumps;
    for (int p = 0; p < static_cast<int>(inst.x.size()); ++p)
        assumps.push_back(p == rank(4, 1, 3) ? inst.x[p] : -inst.x[p]);
    for (int l = 1; l <= 4; ++l) assumps.push_back(-inst.t[l - 1]);
    CHECK(sv.solve(assumps) == solve_status::unsat);
}

TEST_CASE("direct conflict encoding") {
    const int n = 5;
    const auto lits = identity_lits(interval_count(n));
    for (const interval_variant v : {interval_variant::overlap1, interval_variant::overlap2}) {
        const formula f = encode_interval_isp_direct(n, v, lits);
        const graph g = build_interval_graph(n, v);
        formula expected;
        for (auto [u, w] : g.edges()) expected.add(clause{-u, -w});
        CHECK(f == expected);
    }
    CHECK(encode_interval_isp_direct(5, interval_variant::overlap1, lits).size() == 40);
    CHECK(encode_interval_isp_direct(5, interval_variant::overlap2, lits).size() == 30);

    CHECK_THROWS_AS(
        (void)encode_interval_isp_direct(6, interval_variant::overlap1, lits),
        std::invalid_argument);
    auto zeroed = lits;
    zeroed[3] = 0;
    CHECK_THROWS_AS(
        (void)encode_interval_isp_direct(5, interval_variant::overlap1, zeroed),
        std::invalid_argument);
}

TEST_CASE("recursive encoder passes small instances through") {
    var_map pool = interval_pool(5);
    const auto lits = identity_lits(interval_count(5));
    const formula f = encode_interval_isp_recursive({.n = 5}, lits, pool);
    CHECK(f == encode_interval_isp_direct(5, interval_variant::overlap1, lits));
    CHECK(f.size() == 40);
    CHECK(pool.size() == interval_count(5));   // no auxiliaries below the base
}

TEST_CASE("recursive encoder is an independent-set encoding") {
    for (const interval_variant v : {interval_variant::overlap1, interval_variant::overlap2})
        for (const int base : {2, 4}) {
            var_map pool = interval_pool(6);
            const auto lits = identity_lits(interval_count(6));
            const formula f = encode_interval_isp_recursive(
                {.n = 6, .variant = v, .recursion_base = base}, lits, pool);
            const graph g = build_interval_graph(6, v);
            CHECK(audit_is_encoding(f, g, identity_lits(g.n())) == std::nullopt);
        }
    for (const int n : {8, 10, 12})
        for (const interval_variant v :
             {interval_variant::overlap1, interval_variant::overlap2}) {
            var_map pool = interval_pool(n);
            const auto lits = identity_lits(interval_count(n));
            const formula f = encode_interval_isp_recursive(
                {.n = n, .variant = v, .recursion_base = 4}, lits, pool);
            const graph g = build_interval_graph(n, v);
            const auto bad = audit_is_encoding_sampled(f, g, identity_lits(g.n()), 10000,
                                                       1000u * n + (v == interval_variant::overlap2));
            CHECK(bad == std::nullopt);
        }
}

TEST_CASE("recursive encoder forbids exactly the conflicting pairs") {
    for (int n = 2; n <= 14; ++n)
        for (const interval_variant v :
             {interval_variant::overlap1, interval_variant::overlap2})
            for (const int base : {2, 4}) {
                var_map pool = interval_pool(n);
                const auto lits = identity_lits(interval_count(n));
                const formula f = encode_interval_isp_recursive(
                    {.n = n, .variant = v, .recursion_base = base}, lits, pool);
                check_pair_coverage(f, n, v);
            }
}

TEST_CASE("conflict families cover their own classes") {
    for (int n = 5; n <= 12; ++n)
        for (const interval_variant v :
             {interval_variant::overlap1, interval_variant::overlap2}) {
            var_map pool = interval_pool(n);
            const auto lits = identity_lits(interval_count(n));
            const interval_isp_parts parts = encode_interval_isp_recursive_parts(
                {.n = n, .variant = v, .recursion_base = 4}, lits, pool);
            formula merged = parts.defs;
            for (const formula& part : parts.by_class) merged = merge(merged, part);
            REQUIRE(merged == parts.full);

            const int b = default_block_size(n);
            const graph g = build_interval_graph(n, v);
            const int m = g.n();
            for (int c = 0; c < 5; ++c) {
                solver sv(merge(parts.defs, parts.by_class[c]));
                for (auto [u, w] : g.edges()) {
                    if (classify_edge(g.label(u), g.label(w), b, v) !=
                        static_cast<edge_class>(c))
                        continue;
                    std::vector<int> assumps(m);
                    for (int i = 1; i <= m; ++i) assumps[i - 1] = -i;
                    assumps[u - 1] = u;
                    assumps[w - 1] = w;
                    REQUIRE(sv.solve(assumps) == solve_status::unsat);
                }
            }
        }
}

TEST_CASE("recursive encoder size") {
    var_map pool = interval_pool(40);
    const auto lits = identity_lits(interval_count(40));
    const formula f = encode_interval_isp_recursive({.n = 40}, lits, pool);
    CHECK(f.size() <= 221434);
    for (const int n : {40, 48, 56, 64, 72, 80}) {
        var_map p2 = interval_pool(n);
        const formula fn =
            encode_interval_isp_recursive({.n = n}, identity_lits(interval_count(n)), p2);
        CHECK(fn.size() < overlap1_edges(n));
    }
}

TEST_CASE("block split validation") {
    var_map pool = interval_pool(10);
    const auto lits = identity_lits(interval_count(10));
    CHECK_THROWS_AS((void)encode_interval_isp_recursive({.n = 1}, {}, pool),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        (void)encode_interval_isp_recursive({.n = 10, .recursion_base = 1}, lits, pool),
        std::invalid_argument);
    CHECK_THROWS_AS(
        (void)encode_interval_isp_recursive({.n = 10, .k = 2, .b = 2}, lits, pool),
        std::invalid_argument);
    CHECK_THROWS_AS((void)encode_interval_isp_recursive(
                        {.n = 10, .b = 10, .recursion_base = 4}, lits, pool),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)encode_interval_isp_recursive(
                        {.n = 10, .k = 10, .recursion_base = 4}, lits, pool),
                    std::invalid_argument);
    auto short_lits = lits;
    short_lits.pop_back();
    CHECK_THROWS_AS((void)encode_interval_isp_recursive({.n = 10}, short_lits, pool),
                    std::invalid_argument);
    var_map empty;
    CHECK_THROWS_AS((void)encode_interval_isp_recursive({.n = 10}, lits, empty),
                    std::invalid_argument);
    // Explicit parameters that do shrink the instance are honored.
    var_map pool2 = interval_pool(10);
    const formula f = encode_interval_isp_recursive(
        {.n = 10, .k = 5, .b = 2, .recursion_base = 4}, lits, pool2);
    check_pair_coverage(f, 10, interval_variant::overlap1);
}

TEST_CASE("one-level encoder") {
    const auto lits5 = identity_lits(interval_count(5));
    for (const interval_variant v : {interval_variant::overlap1, interval_variant::overlap2}) {
        var_map pool = interval_pool(5);
        CHECK(encode_interval_isp_block83(5, v, lits5, pool) ==
              encode_interval_isp_direct(5, v, lits5));
        var_map pool6 = interval_pool(6);
        const auto lits6 = identity_lits(interval_count(6));
        const formula f6 = encode_interval_isp_block83(6, v, lits6, pool6);
        const graph g6 = build_interval_graph(6, v);
        CHECK(audit_is_encoding(f6, g6, identity_lits(g6.n())) == std::nullopt);
        for (const int n : {8, 12}) {
            var_map pn = interval_pool(n);
            const formula fn =
                encode_interval_isp_block83(n, v, identity_lits(interval_count(n)), pn);
            check_pair_coverage(fn, n, v);
        }
    }
}

TEST_CASE("one-level encoder size") {
    for (const int n : {20, 40, 80}) {
        var_map pool = interval_pool(n);
        const formula f = encode_interval_isp_block83(n, interval_variant::overlap1,
                                                      identity_lits(interval_count(n)), pool);
        const double budget = 12.0 * std::pow(static_cast<double>(n), 8.0 / 3.0);
        CHECK(static_cast<double>(f.size()) <= budget);
    }
}

TEST_CASE("auxiliary naming") {
    var_map pool = interval_pool(12);
    const auto lits = identity_lits(interval_count(12));
    const formula f =
        encode_interval_isp_recursive({.n = 12, .recursion_base = 4}, lits, pool);
    CHECK(pool.find(var_name{"isp-y", {1, 1, 2}}).has_value());
    CHECK(pool.find(var_name{"isp-s", {1, 1, 2}}).has_value());
    CHECK(pool.find(var_name{"isp-f", {1, 1, 12}}).has_value());
    CHECK(pool.find(var_name{"isp-t", {1, 1}}).has_value());
    CHECK(pool.find(var_name{"isp-z", {1, 1, 2}}).has_value());
    CHECK(pool.size() == f.max_var());   // every auxiliary appears in the formula
}

}
