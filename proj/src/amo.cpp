#include "covenc/amo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <unordered_set>

namespace covenc {

namespace {

int max_request_var(std::span<const int> lits) {
    int m = 0;
    for (int code : lits) m = std::max(m, std::abs(code));
    return m;
}

void check_pool_covers(std::span<const int> lits, const var_map& pool) {
    if (max_request_var(lits) > pool.size())
        throw std::invalid_argument("variable pool does not cover the request");
}

// Aux variables are named by their own index so names stay unique no matter
// how many encodings share the pool.
int fresh_aux(var_map& pool, const char* kind) {
    return pool.fresh(kind, {pool.size() + 1});
}

void emit_pairwise(formula& f, std::span<const int> lits) {
    for (std::size_t i = 0; i < lits.size(); ++i)
        for (std::size_t j = i + 1; j < lits.size(); ++j)
            f.add(clause{-lits[i], -lits[j]});
}

void emit_product(formula& f, std::span<const int> lits, var_map& pool) {
    std::size_t n = lits.size();
    if (n <= 4) {
        emit_pairwise(f, lits);
        return;
    }
    auto cols = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
    std::size_t rows = (n + cols - 1) / cols;
    std::vector<int> row_vars, col_vars;
    for (std::size_t r = 0; r < rows; ++r) row_vars.push_back(fresh_aux(pool, "amo-row"));
    for (std::size_t c = 0; c < cols; ++c) col_vars.push_back(fresh_aux(pool, "amo-col"));
    for (std::size_t t = 0; t < n; ++t) {
        f.add(clause{-lits[t], row_vars[t / cols]});
        f.add(clause{-lits[t], col_vars[t % cols]});
    }
    emit_product(f, row_vars, pool);
    emit_product(f, col_vars, pool);
}

} // namespace

void validate_amo_literals(std::span<const int> lits) {
    if (lits.empty()) throw std::invalid_argument("empty at-most-one request");
    std::unordered_set<int> seen;
    for (int code : lits) {
        if (code == 0) throw std::invalid_argument("literal code must be nonzero");
        if (seen.contains(-code))
            throw std::invalid_argument("complementary literals in one request");
        seen.insert(code);
    }
}

formula amo_pairwise(std::span<const int> lits) {
    validate_amo_literals(lits);
    formula f;
    f.note_var(max_request_var(lits));
    emit_pairwise(f, lits);
    return f;
}

formula amo_product(std::span<const int> lits, var_map& pool) {
    validate_amo_literals(lits);
    check_pool_covers(lits, pool);
    formula f;
    f.note_var(max_request_var(lits));
    emit_product(f, lits, pool);
    f.note_var(pool.size());
    return f;
}

formula cardinality_equals_k(std::span<const int> vars, int k, var_map& pool) {
    int n = static_cast<int>(vars.size());
    if (k < 0 || k > n) throw std::invalid_argument("cardinality target out of range");
    {
        std::unordered_set<int> seen;
        for (int v : vars) {
            if (v < 1) throw std::invalid_argument("variable indices start at 1");
            if (!seen.insert(v).second)
                throw std::invalid_argument("duplicate variable in cardinality request");
        }
    }
    check_pool_covers(vars, pool);
    formula f;
    f.note_var(max_request_var(vars));

    // count[i-1][j-1] holds "at least j of the first i inputs are true";
    // columns above k+1 never matter for an equality test.
    int levels = std::min(n, k + 1);
    std::vector<std::vector<int>> count(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= std::min(i, levels); ++j)
            count[static_cast<std::size_t>(i - 1)].push_back(fresh_aux(pool, "card"));
    auto s = [&](int i, int j) { return count[static_cast<std::size_t>(i - 1)]
                                             [static_cast<std::size_t>(j - 1)]; };
    // s(i,j) holds exactly when at least j of the first i inputs are true:
    // s(i,j) <-> s(i-1,j) or (x_i and s(i-1,j-1)), with the out-of-range
    // entries constant (level 0 true, level above i false).
    for (int i = 1; i <= n; ++i) {
        int x = vars[static_cast<std::size_t>(i - 1)];
        for (int j = 1; j <= std::min(i, levels); ++j) {
            bool have_carry = j <= i - 1;
            if (have_carry) f.add(clause{-s(i - 1, j), s(i, j)});
            if (j == 1)
                f.add(clause{-x, s(i, j)});
            else
                f.add(clause{-x, -s(i - 1, j - 1), s(i, j)});
            if (have_carry) {
                f.add(clause{-s(i, j), s(i - 1, j), x});
                if (j > 1) f.add(clause{-s(i, j), s(i - 1, j), s(i - 1, j - 1)});
            } else {
                f.add(clause{-s(i, j), x});
                if (j > 1) f.add(clause{-s(i, j), s(i - 1, j - 1)});
            }
        }
    }
    if (k >= 1) f.add(clause{s(n, k)});
    if (k + 1 <= n) f.add(clause{-s(n, k + 1)});
    return f;
}

} // namespace covenc
