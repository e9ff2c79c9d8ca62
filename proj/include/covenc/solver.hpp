#pragma once

// Complete backtracking SAT solver, sized for the desk-scale instances the
// verification oracles throw at it.

#include "covenc/cnf.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace covenc {

enum class solve_status { sat, unsat };

// Builds its occurrence structure once; repeated solve calls with different
// assumption sets reuse it, which keeps exhaustive audits over many partial
// assignments affordable.
class solver {
public:
    explicit solver(const formula& f);

    solve_status solve();
    solve_status solve(std::span<const int> assumptions);  // signed literal codes

    // Total over every variable the clause set or the last assumption set
    // mentions; only meaningful after a sat result.
    [[nodiscard]] const assignment& model() const { return model_; }

    [[nodiscard]] std::uint64_t decisions() const { return decisions_; }
    [[nodiscard]] std::uint64_t propagations() const { return propagations_; }

private:
    [[nodiscard]] bool assign(int code);
    void unassign(int code);
    [[nodiscard]] bool propagate();
    bool assign_pure_literals();
    [[nodiscard]] int pick_branch_literal();
    void pop_trail_to(std::size_t mark);
    void build_model();

    int nvars_;
    bool has_empty_;
    std::size_t nclauses_ = 0;
    std::vector<int> lits_;                      // clause literals, flattened
    std::vector<std::uint32_t> clause_off_;      // nclauses_ + 1 offsets into lits_
    std::vector<std::vector<std::uint32_t>> occ_;
    std::vector<std::uint32_t> sat_count_;       // true literals per clause
    std::vector<std::uint32_t> free_count_;      // unassigned literals per clause
    std::vector<std::uint32_t> unsat_occ_;       // literal occurrences in unsatisfied clauses
    std::vector<signed char> val_;               // 0 free, +1 true, -1 false
    std::vector<int> trail_;
    std::size_t sat_clauses_ = 0;
    std::vector<std::uint32_t> unit_queue_;
    std::vector<std::uint32_t> score_;           // branch heuristic scratch
    std::vector<std::uint32_t> touched_;
    std::uint64_t decisions_ = 0;
    std::uint64_t propagations_ = 0;
    assignment model_;
};

[[nodiscard]] bool satisfiable(const formula& f);

} // namespace covenc
