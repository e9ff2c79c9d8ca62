#pragma once

// Encoders for discrete interval conflict graphs: the position-coverage
// formulas (naive and chained) and the block-decomposition encoders that beat
// one-clause-per-edge, in recursive and single-level form.

#include "covenc/cnf.hpp"
#include "covenc/graph.hpp"

#include <span>
#include <vector>

namespace covenc {

// Variable layout shared by the position-coverage encoders: x selects an
// interval, t flags a covered position, z covers a subrange. x holds literal
// codes so block encoders can plug in their own selectors; t and z are
// variable indices. Interval-indexed vectors follow interval_vertex order.
struct ipt_instance {
    int n = 0;
    std::vector<int> x;
    std::vector<int> t;
    std::vector<int> z;
};

// Fresh x(i,j), t(l), z(i,j) variables from the pool, in that order.
[[nodiscard]] ipt_instance make_ipt_instance(int n, var_map& pool);

// Coverage by brute force: t_l holds iff some selected interval contains l,
// one implication per (interval, position) pair. Cubic in n.
[[nodiscard]] formula encode_nip(const ipt_instance& inst);

// Coverage through the z chain, quadratic in n: a selected interval raises
// its z, every z passes to both one-shorter subranges and fires t at length
// two, and a raised z must extend or be selected itself.
[[nodiscard]] formula encode_ipt(const ipt_instance& inst);

// One binary clause per conflicting pair. vertex_lits[v-1] is the literal
// selecting vertex v of build_interval_graph(n, variant).
[[nodiscard]] formula encode_interval_isp_direct(int n, interval_variant variant,
                                                 std::span<const int> vertex_lits);

struct block_encoder_params {
    int n = 0;
    interval_variant variant = interval_variant::overlap1;
    int k = 0;                // block count; 0 derives max(2, floor lg n)
    int b = 0;                // block size; 0 derives ceil(n / k)
    int recursion_base = 32;  // at or below this size, emit the direct encoding
};

// Block-decomposition encoder: same-block-pattern conflicts recurse on the
// block or block pair, block-spanning selections project to a y layer that
// recurses on the two-shared-position block graph, and per-block position
// coverage drives the start-side, finish-side and mixed conflict families.
[[nodiscard]] formula encode_interval_isp_recursive(const block_encoder_params& p,
                                                    std::span<const int> vertex_lits,
                                                    var_map& pool);

// Single-level variant with k ~ n^(2/3) blocks: the recursive positions are
// emitted directly instead. Degenerates to the direct encoding for n <= 5.
[[nodiscard]] formula encode_interval_isp_block83(int n, interval_variant variant,
                                                  std::span<const int> vertex_lits,
                                                  var_map& pool);

// Same construction with every clause also filed by the conflict family that
// motivates it: defs carries the defining layers (y/s/f introductions and
// long clauses, the per-block coverage chain), by_class[c] the clauses that
// forbid edges of class c, sub-encodings included.
struct interval_isp_parts {
    formula full;
    formula defs;
    formula by_class[5];      // indexed by static_cast<int>(edge_class)
};

[[nodiscard]] interval_isp_parts encode_interval_isp_recursive_parts(
    const block_encoder_params& p, std::span<const int> vertex_lits, var_map& pool);

} // namespace covenc
