#pragma once

// Ground-truth checks used to audit encodings: independent-set enumeration,
// the per-assignment independence audit, and projected equisatisfiability.

#include "covenc/cnf.hpp"
#include "covenc/graph.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace covenc {

// Vertices sorted ascending within each set, sets in lexicographic order, the
// empty set first.
[[nodiscard]] std::vector<std::vector<int>> enumerate_independent_sets(const graph& g);

// Rejects duplicate or out-of-range vertices.
[[nodiscard]] bool is_independent_set(const graph& g, std::span<const int> verts);

// Mismatch found while auditing an encoding against its graph.
struct isp_violation {
    std::vector<int> selected;   // vertices the base assignment turned on
    bool independent;            // whether that selection is independent
    bool encoding_sat;           // whether the restricted formula is satisfiable
};

// Audits the defining property of an independent-set encoding: restricting the
// formula by a total assignment to the per-vertex variables leaves it
// satisfiable exactly when the selected vertices are pairwise nonadjacent.
// Auxiliary variables stay free. vertex_vars[v-1] is the variable for vertex v.
// The exhaustive form walks all 2^n selections and requires n <= 30.
[[nodiscard]] std::optional<isp_violation> audit_is_encoding(
    const formula& f, const graph& g, const std::vector<int>& vertex_vars);
[[nodiscard]] std::optional<isp_violation> audit_is_encoding_sampled(
    const formula& f, const graph& g, const std::vector<int>& vertex_vars, int samples,
    std::uint64_t seed);

struct equisat_violation {
    assignment tau;
    bool first_sat;
    bool second_sat;
};

// Checks that both formulas agree on satisfiability under every total
// assignment to the shared variables; variables private to either side stay
// free. At most 30 shared variables.
[[nodiscard]] std::optional<equisat_violation> audit_equisat(
    const formula& a, const formula& b, std::span<const int> shared_vars);

} // namespace covenc
