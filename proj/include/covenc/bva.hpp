#pragma once

// Idealized bounded variable addition: grid products, the single rewrite step,
// a greedy gain-driven re-encoder, and the linear at-most-one construction
// built from repeated rewrite steps.

#include "covenc/cnf.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace covenc {

// A rectangle of clauses: every choice of one literal from l and one clause
// from gamma. Using a clause for l rules out complementary selector literals.
struct grid_product {
    clause l;
    std::vector<clause> gamma;
};

// The |l|·|gamma| clauses gamma_j plus l_i. Throws std::invalid_argument if
// any combination is tautological or two combinations collide.
[[nodiscard]] std::vector<clause> grid_product_expand(const grid_product& gp);

// Replaces the product's expansion inside f by |l| + |gamma| clauses through a
// fresh variable y: (y-bar or l_i) and (y or gamma_j). The expansion must be a
// subset of f and the pool must cover f's variables.
[[nodiscard]] formula bva_step(const formula& f, const grid_product& gp, var_map& pool);

struct bva_step_record {
    std::size_t l_size;
    std::size_t gamma_size;
    int gain;                                // clauses removed minus clauses added
    int new_var;
};

struct bva_policy {
    std::uint64_t max_steps = 1'000'000;
    int min_gain = 1;
};

struct bva_result {
    formula f;
    std::vector<bva_step_record> steps;
};

// Greedy loop: find the grid product of maximum gain (ties to the smallest
// seed literal pair), rewrite, repeat while the gain meets the policy. New
// variables take part in later products.
[[nodiscard]] bva_result bva_reencode(const formula& f, var_map& pool,
                                      bva_policy policy = {});

// At-most-one over the request literals in exactly 3n - 6 clauses for n >= 3:
// the pairwise triangle on the first three literals, their three guard
// clauses, and the same construction over the guard and the remaining
// literals. Every formula in the chain is reachable from pairwise by rewrite
// steps.
[[nodiscard]] formula amo_bva_construct(std::span<const int> lits, var_map& pool);

} // namespace covenc
