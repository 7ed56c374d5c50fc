#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "gossip/edge_list.hpp"
#include "gossip/generators.hpp"
#include "gossip/graph.hpp"

using namespace gossip;

namespace {

UndirectedGraph p3() {
    const Edge e[] = {{0, 1}, {1, 2}};
    return make_undirected(3, e);
}

// Independent reference: distances by repeated relaxation over the edge list.
std::vector<std::size_t> relaxation_distances(const UndirectedGraph& g, NodeId u) {
    const std::size_t inf = g.node_count() + 1;
    std::vector<std::size_t> d(g.node_count(), inf);
    d[u] = 0;
    auto edges = g.edges();
    for (std::size_t pass = 0; pass < g.node_count(); ++pass)
        for (auto [a, b] : edges) {
            d[a] = std::min(d[a], d[b] + 1);
            d[b] = std::min(d[b], d[a] + 1);
        }
    return d;
}

}  // namespace

TEST_CASE("add_edge inserts once and tracks missing edges") {
    auto g = p3();
    CHECK(g.missing_count() == 1);
    CHECK(g.add_edge(0, 2));
    CHECK(g.missing_count() == 0);
    CHECK(g.is_complete());
    CHECK_FALSE(g.add_edge(0, 2));
    CHECK_FALSE(g.add_edge(2, 0));
    CHECK(g.edge_count() == 3);
}

TEST_CASE("add_edge rejects self-loops and bad nodes with distinct codes") {
    auto g = p3();
    try {
        g.add_edge(1, 1);
        FAIL("expected self-loop error");
    } catch (const GraphError& e) {
        CHECK(e.code() == GraphError::Code::SelfLoop);
    }
    try {
        g.add_edge(0, 7);
        FAIL("expected bad-node error");
    } catch (const GraphError& e) {
        CHECK(e.code() == GraphError::Code::BadNode);
    }
    CHECK(g.edge_count() == 2);

    DirectedGraph d(3);
    CHECK_THROWS_AS(d.add_edge(2, 2), GraphError);
    CHECK(d.add_edge(0, 1));
    CHECK_FALSE(d.add_edge(0, 1));
    CHECK(d.add_edge(1, 0));
}

TEST_CASE("sample_neighbor is uniform") {
    SUBCASE("P3 middle node over 1e6 draws") {
        auto g = p3();
        Rng rng(12345);
        const int draws = 1'000'000;
        int zeros = 0;
        for (int i = 0; i < draws; ++i) {
            NodeId x = g.sample_neighbor(1, rng);
            REQUIRE((x == 0 || x == 2));
            zeros += x == 0;
        }
        CHECK(std::abs(zeros / double(draws) - 0.5) <= 0.002);
    }
    SUBCASE("star center, each leaf within 3 sigma") {
        const std::size_t k = 6;
        auto g = star_graph(k + 1);
        Rng rng(99);
        const int draws = 120'000;
        std::vector<int> counts(k + 1, 0);
        for (int i = 0; i < draws; ++i) ++counts[g.sample_neighbor(0, rng)];
        const double p = 1.0 / k;
        const double sigma = std::sqrt(draws * p * (1 - p));
        CHECK(counts[0] == 0);
        for (std::size_t leaf = 1; leaf <= k; ++leaf) CHECK(std::abs(counts[leaf] - draws * p) <= 3 * sigma);
    }
    SUBCASE("degree-1 node returns its neighbor") {
        auto g = p3();
        Rng rng(1);
        for (int i = 0; i < 100; ++i) CHECK(g.sample_neighbor(0, rng) == 1);
    }
    SUBCASE("isolated node is an error") {
        UndirectedGraph g(3);
        g.add_edge(0, 1);
        Rng rng(1);
        try {
            (void)g.sample_neighbor(2, rng);
            FAIL("expected isolated-node error");
        } catch (const GraphError& e) {
            CHECK(e.code() == GraphError::Code::IsolatedNode);
        }
    }
}

TEST_CASE("khop_neighborhood matches breadth-first layers") {
    CHECK(khop_neighborhood(path_graph(5), 2, 2) == NodeSet{0, 4});
    CHECK(khop_neighborhood(complete_graph(4), 1, 2).empty());
    CHECK(khop_neighborhood(cycle_graph(6), 0, 3) == NodeSet{3});
    CHECK(khop_neighborhood(cycle_graph(6), 0, 2) == NodeSet{2, 4});
    CHECK(khop_neighborhood(cycle_graph(6), 0, 4).empty());
    CHECK_THROWS_AS((void)khop_neighborhood(cycle_graph(6), 0, 0), std::invalid_argument);

    auto g = random_connected(20, 0.1, 5);
    for (NodeId u = 0; u < 20; ++u) {
        auto d = relaxation_distances(g, u);
        for (std::size_t i = 1; i < 20; ++i) {
            NodeSet expected;
            for (NodeId v = 0; v < 20; ++v)
                if (d[v] == i) expected.push_back(v);
            CHECK(khop_neighborhood(g, u, i) == expected);
        }
    }
}

TEST_CASE("induced_degree counts edges into a set") {
    const NodeSet s0{0};
    CHECK(induced_degree(p3(), 1, s0) == 1);
    const NodeSet rest{1, 2, 3};
    CHECK(induced_degree(complete_graph(4), 0, rest) == 3);
    auto c6 = cycle_graph(6);
    CHECK(induced_degree(c6, 0, khop_neighborhood(c6, 0, 2)) == 0);
}

TEST_CASE("degree queries") {
    CHECK(cycle_graph(6).min_degree() == 2);
    CHECK(complete_graph(5).is_complete());
    auto star = star_graph(5);
    CHECK(star.min_degree() == 1);
    CHECK(star.degree(0) == 4);
    CHECK_FALSE(star.is_complete());
}

TEST_CASE("transitive_closure") {
    SUBCASE("directed path adds the shortcut only") {
        const Edge e[] = {{0, 1}, {1, 2}};
        auto c = transitive_closure(make_directed(3, e));
        CHECK(c.edges() == std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}});
    }
    SUBCASE("directed 3-cycle closes to all six ordered pairs") {
        const Edge e[] = {{0, 1}, {1, 2}, {2, 0}};
        auto c = transitive_closure(make_directed(3, e));
        CHECK(c.edge_count() == 6);
        for (NodeId u = 0; u < 3; ++u) CHECK_FALSE(c.has_edge(u, u));
    }
    SUBCASE("idempotent") {
        auto g = directed_weak_lb(16);
        auto c = transitive_closure(g);
        CHECK(transitive_closure(c) == c);
    }
    SUBCASE("matches Floyd-Warshall style reachability") {
        Rng rng(3);
        for (int round = 0; round < 20; ++round) {
            const std::size_t n = 7;
            DirectedGraph g(n);
            for (NodeId u = 0; u < n; ++u)
                for (NodeId v = 0; v < n; ++v)
                    if (u != v && rng.unit() < 0.2) g.add_edge(u, v);
            std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
            for (auto [u, v] : g.edges()) r[u][v] = true;
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j)
                        if (r[i][k] && r[k][j]) r[i][j] = true;
            auto c = transitive_closure(g);
            for (NodeId u = 0; u < n; ++u)
                for (NodeId v = 0; v < n; ++v) CHECK(c.has_edge(u, v) == (u != v && r[u][v]));
        }
    }
}

TEST_CASE("connectivity helpers") {
    CHECK(is_connected(path_graph(10)));
    UndirectedGraph g(4);
    g.add_edge(0, 1);
    g.add_edge(2, 3);
    CHECK_FALSE(is_connected(g));

    CHECK(is_strongly_connected(directed_strong_lb(8)));
    CHECK_FALSE(is_strongly_connected(directed_weak_lb(8)));
    CHECK(is_weakly_connected(directed_weak_lb(8)));
}

TEST_CASE("edge-list format") {
    SUBCASE("writes header and sorted edges with trailing newline") {
        std::ostringstream out;
        write_edge_list(out, cycle_graph(4));
        CHECK(out.str() == "4 4 u\n0 1\n0 3\n1 2\n2 3\n");
        std::ostringstream dout;
        const Edge e[] = {{2, 0}, {0, 1}};
        write_edge_list(dout, make_directed(3, e));
        CHECK(dout.str() == "3 2 d\n0 1\n2 0\n");
    }
    SUBCASE("reads comments and a missing trailing newline") {
        std::istringstream in("# comment\n3 2 u\n# mid\n0 1\n1 2");
        auto g = read_edge_list(in);
        REQUIRE(std::holds_alternative<UndirectedGraph>(g));
        CHECK(std::get<UndirectedGraph>(g) == p3());
    }
    SUBCASE("directed round trip is exact") {
        auto g = directed_strong_lb(6);
        std::istringstream in(to_edge_list(AnyGraph{g}));
        auto back = read_edge_list(in);
        REQUIRE(std::holds_alternative<DirectedGraph>(back));
        CHECK(std::get<DirectedGraph>(back) == g);
    }
    SUBCASE("foreign labels are remapped in order of appearance") {
        std::istringstream in("3 2 u\nalice bob\nbob 17\n");
        auto g = std::get<UndirectedGraph>(read_edge_list(in));
        CHECK(g == p3());
    }
    SUBCASE("malformed input") {
        auto parse = [](const char* text) {
            std::istringstream in(text);
            return read_edge_list(in);
        };
        CHECK_THROWS_AS(parse(""), GraphError);
        CHECK_THROWS_AS(parse("3 2 x\n0 1\n1 2\n"), GraphError);
        CHECK_THROWS_AS(parse("3 3 u\n0 1\n1 2\n"), GraphError);
        CHECK_THROWS_AS(parse("3 1 u\n0 1 2\n"), GraphError);
        CHECK_THROWS_AS(parse("2 1 u\n0 0\n"), GraphError);
        CHECK_THROWS_AS(parse("2 2 u\na b\nc d\n"), GraphError);
    }
}
