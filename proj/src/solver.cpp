#include "covenc/solver.hpp"

#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace covenc {

namespace {

std::size_t lit_slot(int code) {
    int v = code > 0 ? code : -code;
    return 2 * static_cast<std::size_t>(v - 1) + (code < 0 ? 1 : 0);
}

} // namespace

solver::solver(const formula& f)
    : nvars_(f.max_var()), has_empty_(f.has_empty_clause()) {
    clause_off_.push_back(0);
    for (const clause& c : f) {
        if (c.empty()) continue;
        for (int code : c.codes()) lits_.push_back(code);
        clause_off_.push_back(static_cast<std::uint32_t>(lits_.size()));
    }
    nclauses_ = clause_off_.size() - 1;
    occ_.assign(2 * static_cast<std::size_t>(nvars_), {});
    unsat_occ_.assign(2 * static_cast<std::size_t>(nvars_), 0);
    sat_count_.assign(nclauses_, 0);
    free_count_.assign(nclauses_, 0);
    val_.assign(static_cast<std::size_t>(nvars_), 0);
    score_.assign(2 * static_cast<std::size_t>(nvars_), 0);
    for (std::size_t c = 0; c < nclauses_; ++c) {
        free_count_[c] = clause_off_[c + 1] - clause_off_[c];
        for (std::uint32_t k = clause_off_[c]; k < clause_off_[c + 1]; ++k) {
            occ_[lit_slot(lits_[k])].push_back(static_cast<std::uint32_t>(c));
            ++unsat_occ_[lit_slot(lits_[k])];
        }
    }
}

bool solver::assign(int code) {
    int v = std::abs(code);
    if (v > static_cast<int>(val_.size())) val_.resize(static_cast<std::size_t>(v), 0);
    val_[static_cast<std::size_t>(v - 1)] = code > 0 ? 1 : -1;
    trail_.push_back(code);
    if (v > nvars_) return true;               // assumption on a variable outside the clause set
    for (std::uint32_t c : occ_[lit_slot(code)])
        if (sat_count_[c]++ == 0) {
            ++sat_clauses_;
            for (std::uint32_t k = clause_off_[c]; k < clause_off_[c + 1]; ++k)
                --unsat_occ_[lit_slot(lits_[k])];
        }
    bool ok = true;
    for (std::uint32_t c : occ_[lit_slot(-code)]) {
        --free_count_[c];
        if (sat_count_[c] == 0) {
            if (free_count_[c] == 0) ok = false;
            else if (free_count_[c] == 1)
                unit_queue_.push_back(c);
        }
    }
    return ok;
}

void solver::unassign(int code) {
    int v = std::abs(code);
    val_[static_cast<std::size_t>(v - 1)] = 0;
    if (v > nvars_) return;
    for (std::uint32_t c : occ_[lit_slot(code)])
        if (--sat_count_[c] == 0) {
            --sat_clauses_;
            for (std::uint32_t k = clause_off_[c]; k < clause_off_[c + 1]; ++k)
                ++unsat_occ_[lit_slot(lits_[k])];
        }
    for (std::uint32_t c : occ_[lit_slot(-code)]) ++free_count_[c];
}

bool solver::propagate() {
    while (!unit_queue_.empty()) {
        std::uint32_t c = unit_queue_.back();
        unit_queue_.pop_back();
        if (sat_count_[c] > 0 || free_count_[c] != 1) continue;
        int unit = 0;
        for (std::uint32_t k = clause_off_[c]; k < clause_off_[c + 1]; ++k)
            if (val_[static_cast<std::size_t>(std::abs(lits_[k]) - 1)] == 0) {
                unit = lits_[k];
                break;
            }
        ++propagations_;
        if (!assign(unit)) {
            unit_queue_.clear();
            return false;
        }
    }
    return true;
}

// Assigns every literal whose complement no longer occurs in an unsatisfied
// clause; such assignments can satisfy clauses but never falsify one.
bool solver::assign_pure_literals() {
    bool any = false;
    for (int v = 1; v <= nvars_; ++v) {
        if (val_[static_cast<std::size_t>(v - 1)] != 0) continue;
        std::uint32_t pos = unsat_occ_[lit_slot(v)];
        std::uint32_t neg = unsat_occ_[lit_slot(-v)];
        if (pos != 0 && neg != 0) continue;
        bool ok = assign(pos != 0 ? v : -v);
        (void)ok;
        any = true;
    }
    return any;
}

// Most-occurrences among the shortest unsatisfied clauses; ties go to the
// lowest literal slot so runs are reproducible.
int solver::pick_branch_literal() {
    std::uint32_t shortest = std::numeric_limits<std::uint32_t>::max();
    for (std::size_t c = 0; c < nclauses_; ++c)
        if (sat_count_[c] == 0 && free_count_[c] < shortest) shortest = free_count_[c];
    if (shortest == std::numeric_limits<std::uint32_t>::max()) return 0;
    for (std::uint32_t slot : touched_) score_[slot] = 0;
    touched_.clear();
    for (std::size_t c = 0; c < nclauses_; ++c) {
        if (sat_count_[c] != 0 || free_count_[c] != shortest) continue;
        for (std::uint32_t k = clause_off_[c]; k < clause_off_[c + 1]; ++k) {
            int code = lits_[k];
            if (val_[static_cast<std::size_t>(std::abs(code) - 1)] != 0) continue;
            std::uint32_t slot = static_cast<std::uint32_t>(lit_slot(code));
            if (score_[slot]++ == 0) touched_.push_back(slot);
        }
    }
    std::uint32_t best_slot = 0, best_score = 0;
    for (std::uint32_t slot : touched_)
        if (score_[slot] > best_score ||
            (score_[slot] == best_score && slot < best_slot)) {
            best_score = score_[slot];
            best_slot = slot;
        }
    int v = static_cast<int>(best_slot / 2) + 1;
    return best_slot % 2 ? -v : v;
}

void solver::pop_trail_to(std::size_t mark) {
    while (trail_.size() > mark) {
        unassign(trail_.back());
        trail_.pop_back();
    }
}

void solver::build_model() {
    model_.clear();
    for (std::size_t i = 0; i < val_.size(); ++i)
        model_[static_cast<int>(i) + 1] = val_[i] > 0;
    // Unsatisfied clause here would mean the counters drifted.
    for (std::size_t c = 0; c < nclauses_; ++c) {
        bool sat = false;
        for (std::uint32_t k = clause_off_[c]; k < clause_off_[c + 1] && !sat; ++k)
            sat = model_.at(std::abs(lits_[k])) == (lits_[k] > 0);
        if (!sat) throw std::logic_error("solver produced a non-model");
    }
}

solve_status solver::solve() { return solve(std::span<const int>{}); }

solve_status solver::solve(std::span<const int> assumptions) {
    pop_trail_to(0);
    unit_queue_.clear();
    model_.clear();
    if (has_empty_) return solve_status::unsat;
    for (std::size_t c = 0; c < nclauses_; ++c)
        if (free_count_[c] == 1) unit_queue_.push_back(static_cast<std::uint32_t>(c));
    bool ok = true;
    for (int code : assumptions) {
        if (code == 0) throw std::invalid_argument("assumption literal must be nonzero");
        int v = std::abs(code);
        if (v <= static_cast<int>(val_.size()) && val_[static_cast<std::size_t>(v - 1)] != 0) {
            if (val_[static_cast<std::size_t>(v - 1)] != (code > 0 ? 1 : -1)) ok = false;
        } else {
            ok = assign(code);
        }
        if (!ok) break;
    }
    if (ok) ok = propagate();
    if (!ok) {
        unit_queue_.clear();
        return solve_status::unsat;
    }

    struct frame {
        int lit;
        bool flipped;
        std::size_t mark;
    };
    std::vector<frame> stack;
    for (;;) {
        while (sat_clauses_ < nclauses_ && assign_pure_literals()) {}
        if (sat_clauses_ == nclauses_) {
            build_model();
            return solve_status::sat;
        }
        int code = pick_branch_literal();
        if (code == 0) throw std::logic_error("no branch literal in an unsatisfied state");
        ++decisions_;
        stack.push_back({code, false, trail_.size()});
        ok = assign(code) && propagate();
        while (!ok) {
            unit_queue_.clear();
            while (!stack.empty() && stack.back().flipped) {
                pop_trail_to(stack.back().mark);
                stack.pop_back();
            }
            if (stack.empty()) return solve_status::unsat;
            frame& fr = stack.back();
            pop_trail_to(fr.mark);
            fr.flipped = true;
            fr.lit = -fr.lit;
            ok = assign(fr.lit) && propagate();
        }
    }
}

bool satisfiable(const formula& f) {
    return solver(f).solve() == solve_status::sat;
}

} // namespace covenc
