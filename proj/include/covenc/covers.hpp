#pragma once

// Clique and biclique covers of a graph, the greedy and structured cover
// constructions, and the encoders that turn covers into independent-set
// formulas. Vertex v of the graph is always variable v of the formula.

#include "covenc/cnf.hpp"
#include "covenc/graph.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace covenc {

struct clique_cover {
    std::vector<std::vector<int>> cliques;   // each sorted ascending
};

struct biclique {
    std::vector<int> left;                   // sorted ascending
    std::vector<int> right;
};

struct biclique_cover {
    std::vector<biclique> bicliques;
};

// Each clique must induce a complete subgraph and every graph edge must lie
// inside some clique. Throws std::invalid_argument on violation.
void validate_clique_cover(const graph& g, const clique_cover& cover);

// Sides disjoint and nonempty, every cross pair an edge, every graph edge a
// cross pair of some biclique.
void validate_biclique_cover(const graph& g, const biclique_cover& cover);

// Repeatedly grows a maximal clique from the lexicographically first uncovered
// edge, preferring extension vertices that cover the most uncovered edges
// (ties to the lowest index), until every edge is covered.
[[nodiscard]] clique_cover greedy_clique_cover(const graph& g);

// Cover of the n-position interval graph (single-position overlaps) by the
// cliques of intervals containing position k, for k = 2..n-1. Requires n >= 3.
[[nodiscard]] clique_cover interval_clique_cover(int n);

// Seeds each biclique with the first uncovered edge and alternately extends
// either side by the vertex adjacent to all of the other side that covers the
// most uncovered cross edges (at least one; ties to the lowest index).
[[nodiscard]] biclique_cover greedy_biclique_cover(const graph& g);

// Cover of the complete graph on 1..n by halving: the split biclique, then the
// same construction on both halves. Requires n >= 2.
[[nodiscard]] biclique_cover kn_recursive_biclique_cover(int n);

[[nodiscard]] std::size_t cover_weight(const biclique_cover& cover);   // sum |A|+|B|

// Allocates consecutive vertex variables until the pool covers 1..n.
void ensure_vertex_vars(var_map& pool, int n);

// One at-most-one constraint per clique, product-encoded over the clique's
// vertex variables. Validates the cover.
[[nodiscard]] formula encode_cc_isp(const graph& g, const clique_cover& cover, var_map& pool);

// One guard gadget per biclique: the smaller side implies a fresh guard
// variable and the guard excludes the larger side. Single-edge bicliques
// become their direct binary clause. Validates the cover.
[[nodiscard]] formula encode_bc_isp(const graph& g, const biclique_cover& cover, var_map& pool);

// Text forms: "c v1 v2 ..." per clique, "b | A: v... | B: v..." per biclique.
[[nodiscard]] std::string to_cover_text(const clique_cover& cover);
[[nodiscard]] std::string to_cover_text(const biclique_cover& cover);
[[nodiscard]] clique_cover parse_clique_cover(std::string_view text);
[[nodiscard]] biclique_cover parse_biclique_cover(std::string_view text);

} // namespace covenc
