#include "covenc/amo.hpp"

#include "covenc/solver.hpp"
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace covenc;

namespace {

std::vector<int> positive_vars(int n, var_map& pool) {
    std::vector<int> lits;
    for (int i = 1; i <= n; ++i) lits.push_back(pool.fresh("x", {i}));
    return lits;
}

// True when restricting to every polarity pattern over the request literals
// leaves the formula satisfiable exactly for patterns with at most one
// literal true. Auxiliaries stay free.
bool semantically_amo(const formula& f, const std::vector<int>& lits) {
    solver s(f);
    std::vector<int> assumptions(lits.size());
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << lits.size()); ++mask) {
        int on = 0;
        for (std::size_t i = 0; i < lits.size(); ++i) {
            bool bit = (mask >> i) & 1;
            assumptions[i] = bit ? lits[i] : -lits[i];
            on += bit;
        }
        if ((s.solve(assumptions) == solve_status::sat) != (on <= 1)) return false;
    }
    return true;
}

// Same audit against an exact-count target over plain variables.
bool semantically_exactly(const formula& f, const std::vector<int>& vars, int k) {
    solver s(f);
    std::vector<int> assumptions(vars.size());
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << vars.size()); ++mask) {
        int on = 0;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            bool bit = (mask >> i) & 1;
            assumptions[i] = bit ? vars[i] : -vars[i];
            on += bit;
        }
        if ((s.solve(assumptions) == solve_status::sat) != (on == k)) return false;
    }
    return true;
}

} // namespace

TEST_SUITE("amo") {

TEST_CASE("request validation") {
    CHECK_THROWS_AS(static_cast<void>(amo_pairwise(std::vector<int>{})),
                    std::invalid_argument);
    CHECK_THROWS_AS(static_cast<void>(amo_pairwise(std::vector<int>{1, 0})),
                    std::invalid_argument);
    CHECK_THROWS_AS(static_cast<void>(amo_pairwise(std::vector<int>{1, 2, -1})),
                    std::invalid_argument);
    var_map pool;
    CHECK_THROWS_AS(static_cast<void>(amo_product(std::vector<int>{1, 2}, pool)),
                    std::invalid_argument);   // pool does not cover the request
}

TEST_CASE("pairwise counts") {
    var_map pool;
    CHECK(amo_pairwise(positive_vars(5, pool)).size() == 10);
    CHECK(amo_pairwise(std::vector<int>{pool.fresh("solo")}).size() == 0);
    var_map pool4;
    CHECK(amo_pairwise(positive_vars(4, pool4)).size() == 6);
    for (int n = 2; n <= 50; ++n) {
        var_map p;
        CHECK(amo_pairwise(positive_vars(n, p)).size() ==
              static_cast<std::size_t>(n) * (n - 1) / 2);
    }
}

TEST_CASE("pairwise structure over mixed literals") {
    formula f = amo_pairwise(std::vector<int>{3, -1, 2});
    CHECK(f.size() == 3);
    CHECK(f.contains(clause{-3, 1}));
    CHECK(f.contains(clause{-3, -2}));
    CHECK(f.contains(clause{1, -2}));
}

TEST_CASE("product fallback and grid counts") {
    var_map p3;
    CHECK(amo_product(positive_vars(3, p3), p3).size() == 3);
    var_map p9;
    formula f9 = amo_product(positive_vars(9, p9), p9);
    CHECK(f9.size() == 24);                   // 18 projections plus two triangles
    CHECK(p9.size() == 9 + 6);                // three row plus three column selectors
    CHECK(p9.name(10).kind == "amo-row");
    CHECK(p9.name(13).kind == "amo-col");
}

TEST_CASE("product matches the at-most-one meaning") {
    for (int n : {1, 2, 4, 5, 6, 9, 10}) {
        var_map pool;
        std::vector<int> lits = positive_vars(n, pool);
        CHECK(semantically_amo(amo_product(lits, pool), lits));
    }
}

TEST_CASE("product handles mixed polarities") {
    for (std::uint64_t flips : {0x15ULL, 0x2aULL, 0x3fULL}) {
        var_map pool;
        std::vector<int> lits = positive_vars(6, pool);
        for (std::size_t i = 0; i < lits.size(); ++i)
            if ((flips >> i) & 1) lits[i] = -lits[i];
        CHECK(semantically_amo(amo_product(lits, pool), lits));
        CHECK(semantically_amo(amo_pairwise(lits), lits));
    }
}

TEST_CASE("product size stays within the advertised envelope") {
    for (int n = 1; n <= 200; ++n) {
        var_map pool;
        formula f = amo_product(positive_vars(n, pool), pool);
        double bound = 2.0 * n + 5.0 * std::sqrt(static_cast<double>(n)) + 20.0;
        CHECK(static_cast<double>(f.size()) <= bound);
        if (n >= 7) CHECK(f.size() <= static_cast<std::size_t>(n) * (n - 1) / 2);
    }
}

TEST_CASE("exact cardinality semantics") {
    var_map p3;
    std::vector<int> v3 = positive_vars(3, p3);
    CHECK(semantically_exactly(cardinality_equals_k(v3, 0, p3), v3, 0));
    var_map p4;
    std::vector<int> v4 = positive_vars(4, p4);
    CHECK(semantically_exactly(cardinality_equals_k(v4, 4, p4), v4, 4));
    var_map p6;
    std::vector<int> v6 = positive_vars(6, p6);
    formula f = cardinality_equals_k(v6, 2, p6);
    int sat_points = 0;
    solver s(f);
    std::vector<int> a(6);
    for (std::uint64_t mask = 0; mask < 64; ++mask) {
        int on = 0;
        for (int i = 0; i < 6; ++i) {
            bool bit = (mask >> i) & 1;
            a[static_cast<std::size_t>(i)] = bit ? v6[static_cast<std::size_t>(i)]
                                                 : -v6[static_cast<std::size_t>(i)];
            on += bit;
        }
        bool sat = s.solve(a) == solve_status::sat;
        CHECK(sat == (on == 2));
        sat_points += sat;
    }
    CHECK(sat_points == 15);
}

TEST_CASE("exact cardinality across all targets") {
    for (int n = 0; n <= 9; ++n)
        for (int k = 0; k <= n; ++k) {
            var_map pool;
            std::vector<int> vars = positive_vars(n, pool);
            CHECK(semantically_exactly(cardinality_equals_k(vars, k, pool), vars, k));
        }
}

TEST_CASE("cardinality validation") {
    var_map pool;
    std::vector<int> vars = positive_vars(3, pool);
    CHECK_THROWS_AS(static_cast<void>(cardinality_equals_k(vars, 4, pool)),
                    std::invalid_argument);
    CHECK_THROWS_AS(static_cast<void>(cardinality_equals_k(vars, -1, pool)),
                    std::invalid_argument);
    std::vector<int> dup{1, 1, 2};
    CHECK_THROWS_AS(static_cast<void>(cardinality_equals_k(dup, 1, pool)),
                    std::invalid_argument);
}

} // TEST_SUITE
