#include "covenc/cnf.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace covenc {

namespace {

// splitmix64 finalizer; good avalanche for small integer sequences.
std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

clause::clause(std::initializer_list<int> codes) {
    codes_.reserve(codes.size());
    for (int c : codes) {
        if (c == 0) throw std::invalid_argument("literal code must be nonzero");
        codes_.push_back(c);
    }
    canonicalize();
}

clause::clause(std::span<const literal> lits) {
    codes_.reserve(lits.size());
    for (literal l : lits) codes_.push_back(l.code());
    canonicalize();
}

clause::clause(std::span<const int> codes) {
    codes_.reserve(codes.size());
    for (int c : codes) {
        if (c == 0) throw std::invalid_argument("literal code must be nonzero");
        codes_.push_back(c);
    }
    canonicalize();
}

void clause::canonicalize() {
    std::sort(codes_.begin(), codes_.end(), [](int a, int b) {
        int va = a < 0 ? -a : a, vb = b < 0 ? -b : b;
        return va != vb ? va < vb : a < b;
    });
    codes_.erase(std::unique(codes_.begin(), codes_.end()), codes_.end());
    for (std::size_t i = 1; i < codes_.size(); ++i) {
        if (codes_[i - 1] == -codes_[i])
            throw std::invalid_argument("tautological clause: complementary pair on variable " +
                                        std::to_string(codes_[i] < 0 ? -codes_[i] : codes_[i]));
    }
    codes_.shrink_to_fit();
}

bool clause::contains(literal l) const {
    return std::binary_search(codes_.begin(), codes_.end(), l.code(), [](int a, int b) {
        int va = a < 0 ? -a : a, vb = b < 0 ? -b : b;
        return va != vb ? va < vb : a < b;
    });
}

std::strong_ordering operator<=>(const clause& a, const clause& b) {
    auto ai = a.codes_.begin(), bi = b.codes_.begin();
    for (; ai != a.codes_.end() && bi != b.codes_.end(); ++ai, ++bi) {
        int va = *ai < 0 ? -*ai : *ai, vb = *bi < 0 ? -*bi : *bi;
        if (va != vb) return va <=> vb;
        if (*ai != *bi) return *ai <=> *bi;
    }
    return a.codes_.size() <=> b.codes_.size();
}

std::uint64_t clause::hash() const {
    std::uint64_t h = 0x2545f4914f6cdd1dULL;
    for (int c : codes_) h = mix64(h ^ static_cast<std::uint64_t>(static_cast<std::int64_t>(c)));
    return h;
}

std::string clause::str() const {
    std::string out = "(";
    for (std::size_t i = 0; i < codes_.size(); ++i) {
        if (i) out += " ";
        out += std::to_string(codes_[i]);
    }
    out += ")";
    return out;
}

formula& formula::operator=(const formula& other) {
    if (this == &other) return *this;
    set_.clear();
    order_.clear();
    order_.reserve(other.order_.size());
    for (const clause* c : other.order_) {
        auto [it, fresh] = set_.insert(*c);
        order_.push_back(&*it);
        (void)fresh;
    }
    max_var_ = other.max_var_;
    has_empty_ = other.has_empty_;
    return *this;
}

bool formula::add(clause c) {
    int mv = c.max_var();
    auto [it, fresh] = set_.insert(std::move(c));
    if (!fresh) return false;
    order_.push_back(&*it);
    if (mv > max_var_) max_var_ = mv;
    if (it->empty()) has_empty_ = true;
    return true;
}

void formula::note_var(int var) {
    if (var < 0) throw std::invalid_argument("variable index must be nonnegative");
    if (var > max_var_) max_var_ = var;
}

std::vector<const clause*> formula::sorted() const {
    std::vector<const clause*> out(order_);
    std::sort(out.begin(), out.end(), [](const clause* a, const clause* b) { return *a < *b; });
    return out;
}

bool operator==(const formula& a, const formula& b) {
    if (a.size() != b.size()) return false;
    for (const clause& c : a)
        if (!b.contains(c)) return false;
    return true;
}

formula restrict(const formula& f, const assignment& tau) {
    formula out;
    std::vector<int> kept;
    for (const clause& c : f) {
        kept.clear();
        bool sat = false;
        for (int code : c.codes()) {
            literal l(code);
            if (satisfies(tau, l)) { sat = true; break; }
            if (!falsifies(tau, l)) kept.push_back(code);
        }
        if (!sat) out.add(clause(std::span<const int>(kept)));
    }
    out.note_var(f.max_var());
    return out;
}

bool evaluates_true(const formula& f, const assignment& tau) {
    for (const clause& c : f) {
        bool sat = false;
        for (int code : c.codes())
            if (satisfies(tau, literal(code))) { sat = true; break; }
        if (!sat) return false;
    }
    return true;
}

std::string to_dimacs(const formula& f) {
    std::string out = "p cnf " + std::to_string(f.max_var()) + " " + std::to_string(f.size()) + "\n";
    for (const clause* c : f.sorted()) {
        for (int code : c->codes()) {
            out += std::to_string(code);
            out += ' ';
        }
        out += "0\n";
    }
    return out;
}

namespace {

// Whitespace-separated integer scanner over DIMACS body text.
struct int_scanner {
    std::string_view text;
    std::size_t pos = 0;

    std::optional<int> next() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos >= text.size()) return std::nullopt;
        int value = 0;
        auto [p, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
        if (ec != std::errc()) throw parse_error("malformed input: expected integer in DIMACS body");
        pos = static_cast<std::size_t>(p - text.data());
        return value;
    }
};

} // namespace

formula parse_dimacs(std::string_view text) {
    std::size_t pos = 0;
    auto next_line = [&]() -> std::optional<std::string_view> {
        if (pos >= text.size()) return std::nullopt;
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
        pos = eol == std::string_view::npos ? text.size() : eol + 1;
        return line;
    };

    std::optional<std::string_view> header;
    while (auto line = next_line()) {
        if (line->empty() || line->front() == 'c') continue;
        header = line;
        break;
    }
    if (!header) throw parse_error("malformed input: missing DIMACS header");

    int declared_vars = 0;
    std::size_t declared_clauses = 0;
    {
        std::istringstream hs{std::string(*header)};
        std::string p, cnf;
        if (!(hs >> p >> cnf >> declared_vars >> declared_clauses) || p != "p" || cnf != "cnf" || declared_vars < 0)
            throw parse_error("malformed input: bad DIMACS header '" + std::string(*header) + "'");
        std::string trailing;
        if (hs >> trailing) throw parse_error("malformed input: trailing tokens in DIMACS header");
    }

    formula f;
    int_scanner scan{text.substr(pos)};
    std::vector<int> current;
    std::size_t clauses_read = 0;
    while (auto v = scan.next()) {
        if (*v == 0) {
            try {
                f.add(clause(std::span<const int>(current)));
            } catch (const std::invalid_argument& e) {
                throw parse_error(std::string("malformed input: ") + e.what());
            }
            current.clear();
            ++clauses_read;
            continue;
        }
        int var = *v < 0 ? -*v : *v;
        if (var > declared_vars)
            throw parse_error("malformed input: variable " + std::to_string(var) +
                              " exceeds declared maximum " + std::to_string(declared_vars));
        current.push_back(*v);
    }
    if (!current.empty()) throw parse_error("malformed input: unterminated clause in DIMACS body");
    if (clauses_read != declared_clauses)
        throw parse_error("malformed input: header declares " + std::to_string(declared_clauses) +
                          " clauses, body has " + std::to_string(clauses_read));
    f.note_var(declared_vars);
    return f;
}

std::string var_name::str() const {
    if (args.empty()) return kind;
    std::string out = kind + "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(args[i]);
    }
    out += ")";
    return out;
}

var_name var_name::parse(std::string_view text) {
    auto open = text.find('(');
    if (open == std::string_view::npos) {
        if (text.empty()) throw parse_error("malformed input: empty variable name");
        return var_name{std::string(text), {}};
    }
    if (text.back() != ')') throw parse_error("malformed input: unbalanced variable name '" + std::string(text) + "'");
    var_name n{std::string(text.substr(0, open)), {}};
    if (n.kind.empty()) throw parse_error("malformed input: variable name without kind");
    std::string_view body = text.substr(open + 1, text.size() - open - 2);
    if (body.empty()) throw parse_error("malformed input: empty argument list in '" + std::string(text) + "'");
    std::size_t at = 0;
    while (at <= body.size()) {
        std::size_t comma = body.find(',', at);
        std::string_view tok = body.substr(at, comma == std::string_view::npos ? comma : comma - at);
        int value = 0;
        auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (ec != std::errc() || p != tok.data() + tok.size())
            throw parse_error("malformed input: bad name argument '" + std::string(tok) + "'");
        n.args.push_back(value);
        if (comma == std::string_view::npos) break;
        at = comma + 1;
    }
    return n;
}

std::size_t var_name_hash::operator()(const var_name& n) const {
    std::uint64_t h = mix64(std::hash<std::string>{}(n.kind));
    for (int a : n.args) h = mix64(h ^ static_cast<std::uint64_t>(static_cast<std::int64_t>(a)));
    return static_cast<std::size_t>(h);
}

int var_map::fresh(var_name name) {
    auto [it, inserted] = ids_.try_emplace(name, static_cast<int>(names_.size()) + 1);
    if (!inserted) throw std::invalid_argument("duplicate variable name " + name.str());
    names_.push_back(std::move(name));
    return static_cast<int>(names_.size());
}

int var_map::fresh(std::string kind, std::vector<int> args) {
    return fresh(var_name{std::move(kind), std::move(args)});
}

std::optional<int> var_map::find(const var_name& name) const {
    auto it = ids_.find(name);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

const var_name& var_map::name(int var) const {
    if (var < 1 || var > size()) throw std::out_of_range("variable index " + std::to_string(var) + " not in pool");
    return names_[static_cast<std::size_t>(var) - 1];
}

std::string var_map::to_sidecar() const {
    std::string out;
    for (std::size_t i = 0; i < names_.size(); ++i) {
        out += std::to_string(i + 1);
        out += '\t';
        out += names_[i].str();
        out += '\n';
    }
    return out;
}

var_map var_map::parse_sidecar(std::string_view text) {
    var_map pool;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
        pos = eol == std::string_view::npos ? text.size() : eol + 1;
        ++line_no;
        if (line.empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string_view::npos)
            throw parse_error("malformed input: sidecar line " + std::to_string(line_no) + " lacks a tab");
        int index = 0;
        std::string_view idx = line.substr(0, tab);
        auto [p, ec] = std::from_chars(idx.data(), idx.data() + idx.size(), index);
        if (ec != std::errc() || p != idx.data() + idx.size())
            throw parse_error("malformed input: bad sidecar index '" + std::string(idx) + "'");
        if (index != pool.size() + 1)
            throw parse_error("malformed input: sidecar indices must be consecutive from 1, got " +
                              std::to_string(index));
        pool.fresh(var_name::parse(line.substr(tab + 1)));
    }
    return pool;
}

} // namespace covenc
