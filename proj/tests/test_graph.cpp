#include "covenc/graph.hpp"

#include "covenc/cnf.hpp"
#include "doctest.h"

#include <set>
#include <stdexcept>

using namespace covenc;

namespace {

long long choose(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Conflicting interval pairs on n positions, counted directly from the rule.
long long expected_edges(int n, interval_variant v) {
    long long pairs = choose(interval_count(n), 2);
    long long disjoint = choose(n, 4);               // i1<j1<i2<j2
    if (v == interval_variant::overlap2) disjoint += choose(n, 3); // i1<j1=i2<j2
    return pairs - disjoint;
}

} // namespace

TEST_SUITE("graph") {

TEST_CASE("adjacency basics") {
    graph g(4);
    CHECK(g.n() == 4);
    CHECK(g.edge_count() == 0);
    g.add_edge(3, 1);
    g.add_edge(1, 3);                           // duplicate, idempotent
    CHECK(g.edge_count() == 1);
    CHECK(g.edges().front() == std::pair{1, 3});
    CHECK(g.adjacent(1, 3));
    CHECK(g.adjacent(3, 1));
    CHECK_FALSE(g.adjacent(1, 2));
    CHECK_FALSE(g.adjacent(2, 2));
    CHECK_THROWS_AS(g.add_edge(2, 2), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge(0, 1), std::out_of_range);
    CHECK_THROWS_AS(g.add_edge(1, 5), std::out_of_range);
    CHECK_THROWS_AS(static_cast<void>(g.adjacent(1, 9)), std::out_of_range);
}

TEST_CASE("adjacency rows pack bits per vertex") {
    graph g(70);
    g.add_edge(1, 2);
    g.add_edge(1, 70);
    const auto& row = g.adjacency_row(1);
    REQUIRE(row.size() == 2);
    CHECK(row[0] == (std::uint64_t{1} << 1));
    CHECK(row[1] == (std::uint64_t{1} << 5));   // vertex 70 -> bit 69
    CHECK(g.adjacency_row(2)[0] == 1);          // vertex 1 -> bit 0
}

TEST_CASE("interval overlap rules") {
    CHECK(overlap_size({1, 3}, {3, 5}) == 1);
    CHECK(overlap_size({1, 3}, {2, 5}) == 2);
    CHECK(overlap_size({1, 3}, {4, 5}) == 0);
    CHECK(intervals_conflict({1, 3}, {3, 5}, interval_variant::overlap1));
    CHECK_FALSE(intervals_conflict({1, 3}, {3, 5}, interval_variant::overlap2));
    CHECK(intervals_conflict({1, 3}, {2, 5}, interval_variant::overlap2));
    CHECK_FALSE(intervals_conflict({1, 2}, {3, 4}, interval_variant::overlap1));
}

TEST_CASE("variant labels round-trip") {
    CHECK(variant_label(interval_variant::overlap1) == "I");
    CHECK(variant_label(interval_variant::overlap2) == "I0");
    CHECK(variant_from_label("I") == interval_variant::overlap1);
    CHECK(variant_from_label("I0") == interval_variant::overlap2);
    CHECK_THROWS_AS(static_cast<void>(variant_from_label("I1")), std::invalid_argument);
}

TEST_CASE("interval vertex numbering is the lex bijection") {
    for (int n = 2; n <= 9; ++n) {
        int v = 0;
        for (int i = 1; i < n; ++i)
            for (int j = i + 1; j <= n; ++j) {
                ++v;
                CHECK(interval_vertex(n, i, j) == v);
                CHECK(vertex_interval(n, v) == interval{i, j});
            }
        CHECK(v == interval_count(n));
    }
    CHECK_THROWS_AS(static_cast<void>(interval_vertex(5, 3, 3)), std::invalid_argument);
    CHECK_THROWS_AS(static_cast<void>(interval_vertex(5, 2, 6)), std::invalid_argument);
    CHECK_THROWS_AS(static_cast<void>(vertex_interval(5, 11)), std::out_of_range);
}

TEST_CASE("interval graph on five positions") {
    graph g = build_interval_graph(5, interval_variant::overlap1);
    CHECK(g.n() == 10);
    CHECK(g.edge_count() == 40);
    CHECK(g.positions() == 5);
    CHECK(g.label(1) == interval{1, 2});
    CHECK(g.label(10) == interval{4, 5});
    // touching at one endpoint counts here but not under the stricter rule
    int u13 = interval_vertex(5, 1, 3), u35 = interval_vertex(5, 3, 5);
    CHECK(g.adjacent(u13, u35));
    graph g0 = build_interval_graph(5, interval_variant::overlap2);
    CHECK(g0.n() == 10);
    CHECK(g0.edge_count() == 30);
    CHECK_FALSE(g0.adjacent(u13, u35));
}

TEST_CASE("interval graph edge counts follow the closed form") {
    for (int n = 2; n <= 14; ++n) {
        CHECK(static_cast<long long>(build_interval_graph(n, interval_variant::overlap1)
                                         .edge_count()) ==
              expected_edges(n, interval_variant::overlap1));
        CHECK(static_cast<long long>(build_interval_graph(n, interval_variant::overlap2)
                                         .edge_count()) ==
              expected_edges(n, interval_variant::overlap2));
    }
}

TEST_CASE("variant inference recovers the overlap rule") {
    for (int n : {3, 5, 8}) {
        CHECK(infer_interval_variant(build_interval_graph(n, interval_variant::overlap1)) ==
              interval_variant::overlap1);
        CHECK(infer_interval_variant(build_interval_graph(n, interval_variant::overlap2)) ==
              interval_variant::overlap2);
    }
    CHECK_THROWS_AS(static_cast<void>(infer_interval_variant(complete_graph(3))),
                    std::invalid_argument);
    // a tampered edge set matches neither rule
    graph g = build_interval_graph(4, interval_variant::overlap1);
    graph h(g.n());
    h.set_positions(4);
    for (int v = 1; v <= g.n(); ++v) h.set_label(v, g.label(v));
    CHECK_THROWS_AS(static_cast<void>(infer_interval_variant(h)), std::invalid_argument);
}

TEST_CASE("generators") {
    CHECK(complete_graph(6).edge_count() == 15);
    CHECK(complement(complete_graph(3)).edge_count() == 0);
    CHECK(complement(graph(4)).edge_count() == 6);
    graph kb = complete_bipartite(5, 5);
    CHECK(kb.n() == 10);
    CHECK(kb.edge_count() == 25);
    CHECK(kb.adjacent(1, 6));
    CHECK_FALSE(kb.adjacent(1, 2));
    CHECK_FALSE(kb.adjacent(6, 7));
}

TEST_CASE("random graphs are seed-deterministic") {
    graph a = random_graph(10, 0.5, 42);
    graph b = random_graph(10, 0.5, 42);
    CHECK(a.edges() == b.edges());
    CHECK(a.edge_count() > 0);
    CHECK(a.edge_count() < 45);
    graph c = random_graph(10, 0.5, 43);
    CHECK(a.edges() != c.edges());
    CHECK(random_graph(10, 0.0, 7).edge_count() == 0);
    CHECK(random_graph(10, 1.0, 7).edge_count() == 45);
    CHECK_THROWS_AS(static_cast<void>(random_graph(4, 1.5, 0)), std::invalid_argument);
}

TEST_CASE("block arithmetic") {
    CHECK(block_of(1, 3) == 1);
    CHECK(block_of(3, 3) == 1);
    CHECK(block_of(4, 3) == 2);
    CHECK(block_of(12, 3) == 4);
    CHECK(block_count(12, 3) == 4);
    CHECK(block_count(13, 3) == 5);
    CHECK(block_count(5, 5) == 1);
}

TEST_CASE("edge classification on twelve positions with block size three") {
    auto cls = [](interval a, interval b) {
        return classify_edge(a, b, 3, interval_variant::overlap1);
    };
    CHECK(cls({1, 2}, {2, 3}) == edge_class::x);    // both starts and both ends share blocks
    CHECK(cls({1, 8}, {4, 10}) == edge_class::y);   // second start in a strictly interior block
    CHECK(cls({1, 5}, {2, 8}) == edge_class::s);    // starts together, ends apart
    CHECK(cls({2, 8}, {7, 9}) == edge_class::f);    // second interval inside the first's end block
    CHECK(cls({2, 8}, {7, 12}) == edge_class::m);   // crossing out of the first's end block
    CHECK(cls({7, 9}, {2, 8}) == edge_class::f);    // argument order is immaterial
    CHECK_THROWS_AS(static_cast<void>(cls({1, 2}, {4, 5})), std::invalid_argument);
    CHECK_THROWS_AS(static_cast<void>(classify_edge({1, 2}, {2, 3}, 0,
                                                    interval_variant::overlap1)),
                    std::invalid_argument);
    // endpoint touch is an edge only under the looser rule
    CHECK(cls({1, 4}, {4, 8}) == edge_class::m);
    CHECK_THROWS_AS(static_cast<void>(classify_edge({1, 4}, {4, 8}, 3,
                                                    interval_variant::overlap2)),
                    std::invalid_argument);
}

TEST_CASE("every edge matches exactly one class") {
    for (interval_variant v : {interval_variant::overlap1, interval_variant::overlap2})
        for (int n = 2; n <= 12; ++n)
            for (int b = 1; b <= n; ++b)
                for (int u = 1; u <= interval_count(n); ++u)
                    for (int w = u + 1; w <= interval_count(n); ++w) {
                        interval iu = vertex_interval(n, u), iw = vertex_interval(n, w);
                        unsigned mask = matching_edge_classes(iu, iw, b, v);
                        if (!intervals_conflict(iu, iw, v)) {
                            CHECK(mask == 0);
                            continue;
                        }
                        REQUIRE((mask & (mask - 1)) == 0);
                        REQUIRE(mask != 0);
                        edge_class c = classify_edge(iu, iw, b, v);
                        CHECK(mask == (1u << static_cast<unsigned>(c)));
                    }
}

TEST_CASE("graph text round-trips") {
    graph g = build_interval_graph(4, interval_variant::overlap2);
    std::string text = to_graph_text(g);
    graph h = parse_graph_text(text);
    CHECK(h.n() == g.n());
    CHECK(h.positions() == g.positions());
    std::set<std::pair<int, int>> ge(g.edges().begin(), g.edges().end());
    std::set<std::pair<int, int>> he(h.edges().begin(), h.edges().end());
    CHECK(ge == he);
    for (int v = 1; v <= g.n(); ++v) CHECK(h.label(v) == g.label(v));
    CHECK(infer_interval_variant(h) == interval_variant::overlap2);

    graph plain = random_graph(9, 0.4, 11);
    graph back = parse_graph_text(to_graph_text(plain));
    CHECK_FALSE(back.has_interval_labels());
    std::set<std::pair<int, int>> pe(plain.edges().begin(), plain.edges().end());
    std::set<std::pair<int, int>> be(back.edges().begin(), back.edges().end());
    CHECK(pe == be);
}

TEST_CASE("graph text format is fixed") {
    graph g(3);
    g.add_edge(2, 1);
    g.add_edge(2, 3);
    CHECK(to_graph_text(g) == "p graph 3 2\n1 2\n2 3\n");
    CHECK(to_graph_text(graph(0)) == "p graph 0 0\n");
}

TEST_CASE("graph text rejects malformed input") {
    CHECK_THROWS_AS(static_cast<void>(parse_graph_text("")), parse_error);
    CHECK_THROWS_AS(static_cast<void>(parse_graph_text("1 2\n")), parse_error);
    CHECK_THROWS_AS(static_cast<void>(parse_graph_text("p graph 2 2\n1 2\n")), parse_error);
    CHECK_THROWS_AS(static_cast<void>(parse_graph_text("p graph 2 0\np graph 2 0\n")),
                    parse_error);
    CHECK_THROWS_AS(static_cast<void>(parse_graph_text("p graph 2 1\n1 2\nl 1 5 3\n")),
                    parse_error);
    CHECK_THROWS_AS(static_cast<void>(parse_graph_text("p graph 2 1\n1 3\n")),
                    std::out_of_range);
}

} // TEST_SUITE
