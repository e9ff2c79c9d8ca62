#pragma once

// Simple undirected graphs, discrete interval-graph families, block arithmetic
// and the five-way edge classification used by the block encoders.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace covenc {

// Interval families over positions 1..n: overlap1 joins any two intervals that
// share at least one position; overlap2 requires at least two shared positions,
// so intervals that merely touch at an endpoint stay non-adjacent.
enum class interval_variant { overlap1, overlap2 };

[[nodiscard]] std::string_view variant_label(interval_variant v);       // "I" / "I0"
[[nodiscard]] interval_variant variant_from_label(std::string_view s);

struct interval {
    int lo = 0;
    int hi = 0;
    friend bool operator==(const interval&, const interval&) = default;
};

// Number of shared positions of [a.lo, a.hi] and [b.lo, b.hi].
[[nodiscard]] int overlap_size(interval a, interval b);
[[nodiscard]] bool intervals_conflict(interval a, interval b, interval_variant v);

class graph {
public:
    explicit graph(int n);

    [[nodiscard]] int n() const { return n_; }
    [[nodiscard]] std::size_t edge_count() const { return edges_.size(); }
    [[nodiscard]] const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    // Idempotent; loops and out-of-range endpoints are rejected.
    void add_edge(int u, int v);
    [[nodiscard]] bool adjacent(int u, int v) const;

    // Adjacency row of v as a bit mask over vertices 1..n (bit v-1).
    [[nodiscard]] const std::vector<std::uint64_t>& adjacency_row(int v) const;

    // Interval labeling, present on graphs built by build_interval_graph.
    [[nodiscard]] bool has_interval_labels() const { return !labels_.empty(); }
    [[nodiscard]] interval label(int v) const;
    void set_label(int v, interval iv);
    [[nodiscard]] std::optional<int> positions() const { return positions_; }
    void set_positions(int n_positions) { positions_ = n_positions; }

private:
    void check_vertex(int v) const;
    int n_;
    std::vector<std::pair<int, int>> edges_;          // canonical u < v, insertion order
    std::vector<std::vector<std::uint64_t>> adj_;
    std::vector<interval> labels_;
    std::optional<int> positions_;
};

// Vertices are all intervals [i,j] with 1 <= i < j <= n, numbered 1.. in
// lexicographic (i,j) order; edges follow the variant's overlap rule.
[[nodiscard]] graph build_interval_graph(int n, interval_variant v);

// Lexicographic rank (1-based) of interval [i,j] among all intervals on 1..n.
[[nodiscard]] int interval_vertex(int n, int i, int j);
[[nodiscard]] interval vertex_interval(int n, int v);
[[nodiscard]] int interval_count(int n);

// Reconstructs which overlap rule produced the edges of an interval-labeled
// graph; errors if the edge set matches neither.
[[nodiscard]] interval_variant infer_interval_variant(const graph& g);

[[nodiscard]] graph complement(const graph& g);
[[nodiscard]] graph complete_graph(int n);
[[nodiscard]] graph complete_bipartite(int a, int b);   // parts {1..a}, {a+1..a+b}
[[nodiscard]] graph random_graph(int n, double p, std::uint64_t seed);

// Block arithmetic: position i belongs to block ceil(i/b).
[[nodiscard]] constexpr int block_of(int i, int b) { return (i - 1) / b + 1; }
[[nodiscard]] constexpr int block_count(int n, int b) { return (n + b - 1) / b; }

enum class edge_class { x, y, s, f, m };
[[nodiscard]] std::string_view edge_class_label(edge_class c);

// Classifies an interval-graph edge relative to block size b via the decision
// tree: inputs are normalized so the first interval starts no later (ties by
// end). Non-edges under the variant's overlap rule are rejected.
[[nodiscard]] edge_class classify_edge(interval e1, interval e2, int b, interval_variant v);

// Bit i set iff class i's defining conditions hold verbatim for the (normalized)
// pair; used to audit that the five cases are exhaustive and mutually exclusive.
[[nodiscard]] unsigned matching_edge_classes(interval e1, interval e2, int b, interval_variant v);

// Text format: "p graph <n> <m>" header, optional label lines "l <v> <i> <j>",
// then one "u v" line per edge; "c ..." lines are comments.
[[nodiscard]] std::string to_graph_text(const graph& g);
[[nodiscard]] graph parse_graph_text(std::string_view text);

} // namespace covenc
