#pragma once

// Core propositional machinery: literals, clauses, clause-set formulas,
// assignments, restriction, DIMACS text and the variable-name pool.

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace covenc {

// Thrown when textual input (DIMACS, sidecars, graph or cover files) is malformed.
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// A literal is a signed variable reference, encoded DIMACS style: +v or -v, never 0.
class literal {
public:
    explicit literal(int code) : code_(code) {
        if (code == 0) throw std::invalid_argument("literal code must be nonzero");
    }
    static literal positive(int var) { return literal(require_var(var)); }
    static literal negative(int var) { return literal(-require_var(var)); }

    [[nodiscard]] int var() const { return code_ < 0 ? -code_ : code_; }
    [[nodiscard]] bool is_positive() const { return code_ > 0; }
    [[nodiscard]] int code() const { return code_; }

    literal operator~() const { return literal(-code_); }

    // Canonical order: by variable, negative polarity first.
    friend std::strong_ordering operator<=>(literal a, literal b) {
        if (auto c = a.var() <=> b.var(); c != 0) return c;
        return a.code_ <=> b.code_;
    }
    friend bool operator==(literal a, literal b) { return a.code_ == b.code_; }

private:
    static int require_var(int var) {
        if (var <= 0) throw std::invalid_argument("variable index must be positive");
        return var;
    }
    int code_;
};

inline literal lit(int code) { return literal(code); }

// A clause is a set of literals over pairwise distinct variables, kept sorted by
// variable. Construction rejects complementary pairs and folds duplicates, so two
// clauses are equal exactly when they denote the same literal set. The empty
// clause is permitted and unsatisfiable.
class clause {
public:
    clause() = default;
    clause(std::initializer_list<int> codes);
    explicit clause(std::span<const literal> lits);
    explicit clause(std::span<const int> codes);

    [[nodiscard]] std::size_t size() const { return codes_.size(); }
    [[nodiscard]] bool empty() const { return codes_.empty(); }
    [[nodiscard]] const std::vector<int>& codes() const { return codes_; }
    [[nodiscard]] literal at(std::size_t i) const { return literal(codes_[i]); }
    [[nodiscard]] bool contains(literal l) const;
    [[nodiscard]] int max_var() const {
        if (codes_.empty()) return 0;
        int back = codes_.back();
        return back < 0 ? -back : back;
    }

    // Lexicographic on the canonical literal sequence.
    friend std::strong_ordering operator<=>(const clause& a, const clause& b);
    friend bool operator==(const clause& a, const clause& b) { return a.codes_ == b.codes_; }

    [[nodiscard]] std::uint64_t hash() const;
    [[nodiscard]] std::string str() const;

private:
    void canonicalize();
    std::vector<int> codes_;
};

struct clause_hash {
    std::size_t operator()(const clause& c) const { return static_cast<std::size_t>(c.hash()); }
};

// A clause-set formula. Insertion of an already-present clause is a no-op; the
// insertion order of the distinct clauses is preserved for deterministic
// iteration. max_var tracks the highest variable seen, and can be raised past it
// so that DIMACS output may declare variables that occur in no clause.
class formula {
public:
    formula() = default;
    formula(std::initializer_list<clause> cs) {
        for (const auto& c : cs) add(c);
    }
    formula(const formula& other) { *this = other; }
    formula& operator=(const formula& other);
    formula(formula&&) noexcept = default;
    formula& operator=(formula&&) noexcept = default;

    // Returns true if the clause was new.
    bool add(clause c);
    [[nodiscard]] bool contains(const clause& c) const { return set_.contains(c); }
    [[nodiscard]] std::size_t size() const { return order_.size(); }
    [[nodiscard]] bool empty() const { return order_.empty(); }
    [[nodiscard]] int max_var() const { return max_var_; }
    void note_var(int var);
    [[nodiscard]] bool has_empty_clause() const { return has_empty_; }

    [[nodiscard]] const clause& at(std::size_t i) const { return *order_[i]; }

    struct const_iterator {
        const clause* const* p;
        const clause& operator*() const { return **p; }
        const clause* operator->() const { return *p; }
        const_iterator& operator++() { ++p; return *this; }
        bool operator!=(const const_iterator& o) const { return p != o.p; }
        bool operator==(const const_iterator& o) const { return p == o.p; }
    };
    [[nodiscard]] const_iterator begin() const { return {order_.data()}; }
    [[nodiscard]] const_iterator end() const { return {order_.data() + order_.size()}; }

    // Clauses in canonical (sorted) order, as used by DIMACS output.
    [[nodiscard]] std::vector<const clause*> sorted() const;

    friend bool operator==(const formula& a, const formula& b);

private:
    std::unordered_set<clause, clause_hash> set_;
    std::vector<const clause*> order_;
    int max_var_ = 0;
    bool has_empty_ = false;
};

// Partial truth assignment, variable -> value. Ordered for deterministic iteration.
using assignment = std::map<int, bool>;

[[nodiscard]] inline bool satisfies(const assignment& tau, literal l) {
    auto it = tau.find(l.var());
    return it != tau.end() && it->second == l.is_positive();
}
[[nodiscard]] inline bool falsifies(const assignment& tau, literal l) {
    auto it = tau.find(l.var());
    return it != tau.end() && it->second != l.is_positive();
}

// F restricted by tau: satisfied clauses are dropped, falsified literals are
// removed (a fully falsified clause becomes the empty clause). max_var is kept.
[[nodiscard]] formula restrict(const formula& f, const assignment& tau);

// True iff tau makes every clause of f true (tau need not be total, but every
// clause must contain some satisfied literal).
[[nodiscard]] bool evaluates_true(const formula& f, const assignment& tau);

// DIMACS text, bit-exact: header "p cnf <maxVar> <numClauses>", one clause per
// line in canonical order, literals space-separated and 0-terminated, LF endings.
[[nodiscard]] std::string to_dimacs(const formula& f);

// Inverse of to_dimacs; also accepts leading "c" comment lines. Rejects
// tautological clauses, variable indices beyond the declared maximum, and
// clause-count mismatches.
[[nodiscard]] formula parse_dimacs(std::string_view text);

// Structured variable name: a kind tag plus integer arguments, rendered
// "kind(a1,a2,...)" (or bare "kind" when there are no arguments).
struct var_name {
    std::string kind;
    std::vector<int> args;

    [[nodiscard]] std::string str() const;
    static var_name parse(std::string_view text);

    friend bool operator==(const var_name&, const var_name&) = default;
};

struct var_name_hash {
    std::size_t operator()(const var_name& n) const;
};

// Allocation pool mapping variable indices 1..size() to names, bijectively.
class var_map {
public:
    // Allocates the next free index for a previously unused name.
    int fresh(var_name name);
    int fresh(std::string kind, std::vector<int> args = {});

    [[nodiscard]] std::optional<int> find(const var_name& name) const;
    [[nodiscard]] const var_name& name(int var) const;
    [[nodiscard]] int size() const { return static_cast<int>(names_.size()); }

    // One line per variable: "<index>\t<name>", in index order.
    [[nodiscard]] std::string to_sidecar() const;
    static var_map parse_sidecar(std::string_view text);

private:
    std::vector<var_name> names_;
    std::unordered_map<var_name, int, var_name_hash> ids_;
};

} // namespace covenc
