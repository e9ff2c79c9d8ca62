#include "covenc/graph.hpp"

#include "covenc/cnf.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace covenc {

std::string_view variant_label(interval_variant v) {
    return v == interval_variant::overlap1 ? "I" : "I0";
}

interval_variant variant_from_label(std::string_view s) {
    if (s == "I") return interval_variant::overlap1;
    if (s == "I0") return interval_variant::overlap2;
    throw std::invalid_argument("unknown interval variant label: " + std::string(s));
}

int overlap_size(interval a, interval b) {
    int lo = std::max(a.lo, b.lo);
    int hi = std::min(a.hi, b.hi);
    return std::max(0, hi - lo + 1);
}

bool intervals_conflict(interval a, interval b, interval_variant v) {
    return overlap_size(a, b) >= (v == interval_variant::overlap1 ? 1 : 2);
}

graph::graph(int n) : n_(n) {
    if (n < 0) throw std::invalid_argument("graph order must be nonnegative");
    std::size_t words = (static_cast<std::size_t>(n) + 63) / 64;
    adj_.assign(static_cast<std::size_t>(n), std::vector<std::uint64_t>(words, 0));
}

void graph::check_vertex(int v) const {
    if (v < 1 || v > n_)
        throw std::out_of_range("vertex " + std::to_string(v) + " out of range 1.." +
                                std::to_string(n_));
}

void graph::add_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
    if (adjacent(u, v)) return;
    if (u > v) std::swap(u, v);
    adj_[static_cast<std::size_t>(u - 1)][static_cast<std::size_t>((v - 1) / 64)] |=
        std::uint64_t{1} << ((v - 1) % 64);
    adj_[static_cast<std::size_t>(v - 1)][static_cast<std::size_t>((u - 1) / 64)] |=
        std::uint64_t{1} << ((u - 1) % 64);
    edges_.emplace_back(u, v);
}

bool graph::adjacent(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    if (u == v) return false;
    return (adj_[static_cast<std::size_t>(u - 1)][static_cast<std::size_t>((v - 1) / 64)] >>
            ((v - 1) % 64)) & 1;
}

const std::vector<std::uint64_t>& graph::adjacency_row(int v) const {
    check_vertex(v);
    return adj_[static_cast<std::size_t>(v - 1)];
}

interval graph::label(int v) const {
    check_vertex(v);
    if (labels_.empty()) throw std::logic_error("graph has no interval labels");
    return labels_[static_cast<std::size_t>(v - 1)];
}

void graph::set_label(int v, interval iv) {
    check_vertex(v);
    if (labels_.empty()) labels_.assign(static_cast<std::size_t>(n_), interval{});
    labels_[static_cast<std::size_t>(v - 1)] = iv;
}

int interval_count(int n) { return n * (n - 1) / 2; }

int interval_vertex(int n, int i, int j) {
    if (!(1 <= i && i < j && j <= n))
        throw std::invalid_argument("not an interval on 1.." + std::to_string(n) + ": [" +
                                    std::to_string(i) + "," + std::to_string(j) + "]");
    // Intervals starting below i occupy a prefix of the lexicographic order.
    int before = (i - 1) * n - i * (i - 1) / 2;
    return before + (j - i);
}

interval vertex_interval(int n, int v) {
    if (v < 1 || v > interval_count(n))
        throw std::out_of_range("interval vertex " + std::to_string(v) + " out of range");
    int i = 1;
    int rest = v;
    while (rest > n - i) {
        rest -= n - i;
        ++i;
    }
    return {i, i + rest};
}

graph build_interval_graph(int n, interval_variant v) {
    if (n < 2) throw std::invalid_argument("interval graph needs n >= 2 positions");
    graph g(interval_count(n));
    g.set_positions(n);
    for (int u = 1; u <= g.n(); ++u) g.set_label(u, vertex_interval(n, u));
    for (int u = 1; u <= g.n(); ++u) {
        interval iu = g.label(u);
        for (int w = u + 1; w <= g.n(); ++w)
            if (intervals_conflict(iu, g.label(w), v)) g.add_edge(u, w);
    }
    return g;
}

interval_variant infer_interval_variant(const graph& g) {
    if (!g.has_interval_labels() || !g.positions())
        throw std::invalid_argument("graph carries no interval labeling");
    for (interval_variant v : {interval_variant::overlap1, interval_variant::overlap2}) {
        bool ok = true;
        for (int u = 1; u <= g.n() && ok; ++u)
            for (int w = u + 1; w <= g.n() && ok; ++w)
                if (g.adjacent(u, w) != intervals_conflict(g.label(u), g.label(w), v)) ok = false;
        if (ok) return v;
    }
    throw std::invalid_argument("edge set matches no interval overlap rule");
}

graph complement(const graph& g) {
    graph h(g.n());
    for (int u = 1; u <= g.n(); ++u)
        for (int v = u + 1; v <= g.n(); ++v)
            if (!g.adjacent(u, v)) h.add_edge(u, v);
    return h;
}

graph complete_graph(int n) {
    graph g(n);
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v) g.add_edge(u, v);
    return g;
}

graph complete_bipartite(int a, int b) {
    graph g(a + b);
    for (int u = 1; u <= a; ++u)
        for (int v = a + 1; v <= a + b; ++v) g.add_edge(u, v);
    return g;
}

graph random_graph(int n, double p, std::uint64_t seed) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("edge probability outside [0,1]");
    graph g(n);
    // splitmix64 stream; uniform in [0,1) from the top 53 bits.
    std::uint64_t state = seed;
    auto next = [&state] {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v)
            if (static_cast<double>(next() >> 11) * 0x1.0p-53 < p) g.add_edge(u, v);
    return g;
}

std::string_view edge_class_label(edge_class c) {
    switch (c) {
        case edge_class::x: return "x";
        case edge_class::y: return "y";
        case edge_class::s: return "s";
        case edge_class::f: return "f";
        case edge_class::m: return "m";
    }
    throw std::logic_error("bad edge class");
}

namespace {

// Normalize so e1 starts no later than e2, ties broken by end.
void normalize_pair(interval& e1, interval& e2) {
    if (std::pair{e1.lo, e1.hi} > std::pair{e2.lo, e2.hi}) std::swap(e1, e2);
}

// Start of e2 does not pass the end of e1; under overlap2 it must stay
// strictly inside.
bool starts_within(interval e1, interval e2, interval_variant v) {
    return v == interval_variant::overlap1 ? e2.lo <= e1.hi : e2.lo < e1.hi;
}

} // namespace

edge_class classify_edge(interval e1, interval e2, int b, interval_variant v) {
    if (b < 1) throw std::invalid_argument("block size must be positive");
    normalize_pair(e1, e2);
    if (!intervals_conflict(e1, e2, v))
        throw std::invalid_argument("intervals do not conflict under " +
                                    std::string(variant_label(v)));
    int bi1 = block_of(e1.lo, b), bi2 = block_of(e2.lo, b);
    int bj1 = block_of(e1.hi, b), bj2 = block_of(e2.hi, b);
    if (bi1 == bi2) return bj1 == bj2 ? edge_class::x : edge_class::s;
    // bi1 < bi2 now, and the conflict forces e2.lo <= e1.hi, so bi2 <= bj1.
    if (bi2 < bj1) return edge_class::y;
    return bj1 == bj2 ? edge_class::f : edge_class::m;
}

unsigned matching_edge_classes(interval e1, interval e2, int b, interval_variant v) {
    normalize_pair(e1, e2);
    int bi1 = block_of(e1.lo, b), bi2 = block_of(e2.lo, b);
    int bj1 = block_of(e1.hi, b), bj2 = block_of(e2.hi, b);
    bool within = starts_within(e1, e2, v);
    unsigned mask = 0;
    if (bi1 == bi2 && bj1 == bj2 && within) mask |= 1u << 0;                        // x
    if (bi1 < bi2 && bi2 < bj1) mask |= 1u << 1;                                    // y
    if (bi1 == bi2 && within && bj1 != bj2) mask |= 1u << 2;                        // s
    if (bi1 < bi2 && bi2 == bj1 && bj1 == bj2 && within) mask |= 1u << 3;           // f
    if (bi1 < bi2 && bi2 == bj1 && bj1 != bj2 && within) mask |= 1u << 4;           // m
    return mask;
}

std::string to_graph_text(const graph& g) {
    std::string out = "p graph " + std::to_string(g.n()) + ' ' +
                      std::to_string(g.edge_count()) + '\n';
    if (g.positions()) out += "c positions " + std::to_string(*g.positions()) + '\n';
    if (g.has_interval_labels())
        for (int v = 1; v <= g.n(); ++v) {
            interval iv = g.label(v);
            out += "l " + std::to_string(v) + ' ' + std::to_string(iv.lo) + ' ' +
                   std::to_string(iv.hi) + '\n';
        }
    auto edges = g.edges();
    std::sort(edges.begin(), edges.end());
    for (auto [u, v] : edges) out += std::to_string(u) + ' ' + std::to_string(v) + '\n';
    return out;
}

graph parse_graph_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::optional<graph> g;
    std::size_t declared_edges = 0;
    std::optional<int> positions;
    auto fail = [](const std::string& what) -> void { throw parse_error("graph text: " + what); };
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "c") {
            std::string key;
            int value = 0;
            if (ls >> key >> value && key == "positions") positions = value;
            continue;
        }
        if (tok == "p") {
            if (g) fail("duplicate header");
            std::string kind;
            long long n = -1, m = -1;
            if (!(ls >> kind >> n >> m) || kind != "graph" || n < 0 || m < 0)
                fail("malformed header: " + line);
            g.emplace(static_cast<int>(n));
            declared_edges = static_cast<std::size_t>(m);
            continue;
        }
        if (!g) fail("edge data before header");
        if (tok == "l") {
            int v = 0, lo = 0, hi = 0;
            if (!(ls >> v >> lo >> hi) || lo >= hi) fail("malformed label line: " + line);
            g->set_label(v, {lo, hi});
            continue;
        }
        int u = 0, v = 0;
        std::istringstream es(line);
        if (!(es >> u >> v)) fail("malformed edge line: " + line);
        g->add_edge(u, v);
    }
    if (!g) fail("missing header");
    if (g->edge_count() != declared_edges)
        fail("edge count mismatch: header says " + std::to_string(declared_edges) + ", found " +
             std::to_string(g->edge_count()));
    if (positions) g->set_positions(*positions);
    return *std::move(g);
}

} // namespace covenc
