#pragma once

// At-most-one and exact-cardinality building blocks. Requests range over
// literals, not just variables: downstream re-encodings recurse on guard
// literals of mixed polarity.

#include "covenc/cnf.hpp"

#include <span>

namespace covenc {

// A valid request is a nonempty literal list with no complementary pair;
// repeats are allowed and count separately toward the "at most one".
void validate_amo_literals(std::span<const int> lits);

// (l̄i ∨ l̄j) for every i < j: C(n,2) clauses, no auxiliaries.
[[nodiscard]] formula amo_pairwise(std::span<const int> lits);

// Grid encoding: literals on a ceil(sqrt n)-column grid, one selector variable
// per row and column, projection clauses into both, then the same construction
// over each selector family. Lists of at most 4 literals fall back to pairwise.
// The pool must already cover every variable the request mentions; selectors
// are drawn fresh from it.
[[nodiscard]] formula amo_product(std::span<const int> lits, var_map& pool);

// Sum over distinct variables equals k, via a unary running counter with
// defining clauses in both directions, so counter values are determined by the
// inputs. The pool must already cover the input variables.
[[nodiscard]] formula cardinality_equals_k(std::span<const int> vars, int k, var_map& pool);

} // namespace covenc
