#pragma once

// Problem-level reductions to CNF: independent set with an optional exact
// cardinality, vertex cover, k-coloring, clique, and the non-preemptive
// scheduling encoder with its exhaustive reference scheduler.

#include "covenc/cnf.hpp"
#include "covenc/graph.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace covenc {

enum class isp_strategy { direct, clique_cover, biclique_cover, recursive_blocks, block83 };

// "direct", "cliqueCover", "bicliqueCover", "recursiveBlocks", "block83".
[[nodiscard]] std::string_view strategy_label(isp_strategy s);
[[nodiscard]] isp_strategy strategy_from_label(std::string_view s);

// Selecting vertex v is variable v, allocated into the pool on demand. The
// models project to exactly the independent sets of g, of size k when k is
// supplied (k must lie in [0, n]). recursive_blocks and block83 need an
// interval-labeled graph (build_interval_graph) and follow its overlap rule.
[[nodiscard]] formula encode_independent_set(const graph& g, std::optional<int> k,
                                             isp_strategy strategy, var_map& pool);

// Covers of size exactly k: the independence formula with every vertex literal
// flipped, plus the cardinality layer. Supersets of covers are covers, so the
// formula is satisfiable iff the minimum cover size is at most k <= n.
[[nodiscard]] formula encode_vertex_cover(const graph& g, int k, isp_strategy strategy,
                                          var_map& pool);

// One independence copy per color over variables x_{v,c} plus one
// at-least-one-color clause per vertex. No per-vertex at-most-one layer:
// extra colors only strengthen independence, so satisfiability already
// coincides with k-colorability.
[[nodiscard]] formula encode_coloring(const graph& g, int k, isp_strategy strategy,
                                      var_map& pool);

// Independence of the same selection in the complement graph.
[[nodiscard]] formula encode_clique(const graph& g, int k, isp_strategy strategy,
                                    var_map& pool);

struct scheduling_instance {
    struct task {
        int d = 1;   // duration
        int r = 1;   // release
        int e = 1;   // deadline; the task must start and finish inside [r, e]
    };
    int machines = 0;
    int horizon = 0;
    std::vector<task> tasks;
};

// d >= 1 and 1 <= r <= e <= horizon for every task; machine count and horizon
// nonnegative. A window leaving no start (r + d > e) is legal; the task is
// simply unschedulable and the encoders reflect that.
void validate_instance(const scheduling_instance& inst);

// Start variables x_{i,t,m} over each task's feasible starts, occupancy
// variables y_{m,t1,t2} per machine and time interval, linkage from starts to
// occupancy, at-most-one start per duration class, start time and machine,
// one at-least-one-start clause per task (empty when the window admits no
// start), and a per-machine disjoint-occupancy layer requiring a two-point
// overlap for a conflict, so back-to-back execution stays allowed.
[[nodiscard]] formula encode_scheduling(const scheduling_instance& inst, var_map& pool);

// Baseline for size comparisons: same start variables and per-task clauses,
// but machine exclusion written as one binary clause per time-overlapping
// placement pair. Quadratic in placements; kept deliberately plain.
[[nodiscard]] formula encode_scheduling_pairwise(const scheduling_instance& inst,
                                                 var_map& pool);

struct schedule_slot {
    int start = 0;
    int machine = 0;
    friend bool operator==(const schedule_slot&, const schedule_slot&) = default;
};

// Exhaustive search over start times and machines, one slot per task, with
// half-open occupancy so back-to-back tasks may share a boundary. Throws when
// the search space (product of per-task options) exceeds 10^7.
[[nodiscard]] std::optional<std::vector<schedule_slot>> brute_force_schedule(
    const scheduling_instance& inst);

// JSON instance files:
//   {"N": 2, "M": 1, "T": 5, "tasks": [{"d": 2, "r": 1, "e": 3}, ...]}
// N is the task count and must match the array when present.
[[nodiscard]] std::string to_instance_text(const scheduling_instance& inst);
[[nodiscard]] scheduling_instance parse_instance_text(std::string_view text);

} // namespace covenc
