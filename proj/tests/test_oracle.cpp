#include <doctest.h>

#include <cmath>
#include <set>

#include <json.hpp>

#include "gossip/generators.hpp"
#include "gossip/oracle.hpp"
#include "support/brute_force.hpp"

using namespace gossip;
using oracle::Rational;

namespace {

UndirectedGraph from(std::size_t n, std::initializer_list<Edge> edges) {
    UndirectedGraph g(n);
    for (auto [a, b] : edges) g.add_edge(a, b);
    return g;
}

UndirectedGraph p3() { return from(3, {{0, 1}, {1, 2}}); }
UndirectedGraph paw() { return from(4, {{0, 1}, {0, 2}, {1, 2}, {2, 3}}); }
UndirectedGraph diamond() { return from(4, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}}); }

// Converts the oracle's mask-keyed law to brute's edge-set keys.
template <class Graph>
std::map<brute::EdgeSet, Rational> keyed(const Graph& g, const oracle::RoundLaw<Rational>& law, bool directed) {
    oracle::PairIndex idx(g.node_count(), directed);
    std::map<brute::EdgeSet, Rational> out;
    for (const auto& [mask, p] : law) {
        auto e = idx.edges(mask);
        out[brute::EdgeSet(e.begin(), e.end())] += p;
    }
    return out;
}

const ProcessKind kUndirected[] = {ProcessKind::Triangulation, ProcessKind::TwoHopUndirected};

}  // namespace

TEST_CASE("single-round law agrees with literal joint enumeration") {
    std::vector<UndirectedGraph> graphs{p3(), star_graph(4), path_graph(4), cycle_graph(4), paw(), diamond(),
                                        complete_graph(4), path_graph(5), cycle_graph(5)};
    for (const auto& g : graphs)
        for (auto kind : kUndirected) {
            auto law = oracle::single_round_distribution(g, kind);
            CHECK(keyed(g, law, false) == brute::round_law(g, kind));
            Rational total(0);
            for (const auto& [m, p] : law) total += p;
            CHECK(total == 1);
            auto approx = oracle::single_round_distribution_double(g, kind);
            REQUIRE(approx.size() == law.size());
            for (const auto& [m, p] : law)
                CHECK(approx.at(m) == doctest::Approx(static_cast<double>(p)).epsilon(1e-12));
        }

    for (auto d : {directed_weak_lb(4), directed_strong_lb(4)}) {
        auto law = oracle::single_round_distribution(d, ProcessKind::TwoHopDirected);
        CHECK(keyed(d, law, true) == brute::round_law(d, ProcessKind::TwoHopDirected));
    }
}

TEST_CASE("exact expected rounds") {
    SUBCASE("frozen values") {
        struct Row {
            UndirectedGraph g;
            Rational tri, twohop;
        };
        const Row rows[] = {
            {p3(), Rational(2), Rational(4, 3)},
            {star_graph(4), Rational(201, 32), Rational(3294, 1079)},
            {path_graph(4), Rational(515, 96), Rational(16067, 4565)},
            {cycle_graph(4), Rational(499, 240), Rational(134, 75)},
            {paw(), Rational(153, 32), Rational(234, 83)},
            {diamond(), Rational(81, 32), Rational(9, 5)},
        };
        for (const auto& r : rows) {
            CHECK(oracle::expected_rounds_exact(r.g, ProcessKind::Triangulation) == r.tri);
            CHECK(oracle::expected_rounds_exact(r.g, ProcessKind::TwoHopUndirected) == r.twohop);
            CHECK(oracle::expected_rounds(r.g, ProcessKind::Triangulation) ==
                  doctest::Approx(static_cast<double>(r.tri)));
        }
    }
    SUBCASE("agrees with memoized recursion") {
        for (const auto& g : {path_graph(4), star_graph(4), cycle_graph(4), paw(), diamond()})
            for (auto kind : kUndirected)
                CHECK(oracle::expected_rounds_exact(g, kind) == brute::expected_rounds(g, kind));
        for (auto d : {directed_weak_lb(4), directed_strong_lb(4)})
            CHECK(oracle::expected_rounds_exact(d, ProcessKind::TwoHopDirected) ==
                  brute::expected_rounds(d, ProcessKind::TwoHopDirected));
    }
    SUBCASE("double path matches exact on 5 nodes") {
        for (auto kind : kUndirected) {
            auto g = path_graph(5);
            CHECK(oracle::expected_rounds(g, kind) ==
                  doctest::Approx(static_cast<double>(oracle::expected_rounds_exact(g, kind))).epsilon(1e-9));
        }
    }
    SUBCASE("complete graphs take zero rounds") {
        CHECK(oracle::expected_rounds_exact(complete_graph(4), ProcessKind::Triangulation) == 0);
        CHECK(oracle::expected_rounds_exact(transitive_closure(directed_weak_lb(4)), ProcessKind::TwoHopDirected) ==
              0);
    }
    SUBCASE("invariant under relabeling") {
        auto a = path_graph(4);
        auto b = from(4, {{2, 0}, {0, 3}, {3, 1}});
        for (auto kind : kUndirected)
            CHECK(oracle::expected_rounds_exact(a, kind) == oracle::expected_rounds_exact(b, kind));
    }
}

TEST_CASE("refusals and input errors") {
    try {
        (void)oracle::expected_rounds_exact(path_graph(9), ProcessKind::Triangulation);
        FAIL("expected refusal");
    } catch (const oracle::OracleRefusal& e) {
        CHECK(e.size() == 9);
    }
    // C8 misses 20 edges: allowed size; P8 misses 21.
    CHECK_THROWS_AS((void)oracle::expected_rounds_exact(path_graph(8), ProcessKind::Triangulation),
                    oracle::OracleRefusal);
    auto star8 = star_graph(8);
    CHECK(oracle::choice_space_size(star8, ProcessKind::Triangulation) == 49.0);
    auto k8 = complete_graph(8);
    CHECK(oracle::choice_space_size(k8, ProcessKind::Triangulation) == std::pow(49.0, 8));
    CHECK_THROWS_AS((void)oracle::single_round_distribution(k8, ProcessKind::Triangulation), oracle::OracleRefusal);
    CHECK_THROWS_AS((void)oracle::single_round_distribution(p3(), ProcessKind::TwoHopDirected), GraphError);
    UndirectedGraph split(4);
    split.add_edge(0, 1);
    split.add_edge(2, 3);
    CHECK_THROWS_AS((void)oracle::expected_rounds_exact(split, ProcessKind::Triangulation), GraphError);
}

TEST_CASE("canonical forms and connected masks") {
    // Labeled connected graphs: 1, 4, 38, 728 on 2..5 nodes.
    CHECK(oracle::connected_graph_masks(2).size() == 1);
    CHECK(oracle::connected_graph_masks(3).size() == 4);
    CHECK(oracle::connected_graph_masks(4).size() == 38);
    CHECK(oracle::connected_graph_masks(5).size() == 728);
    // Unlabeled: 1, 2, 6, 21.
    const std::size_t classes[] = {0, 0, 1, 2, 6, 21};
    for (std::size_t n = 2; n <= 5; ++n) {
        std::set<std::uint64_t> c;
        for (auto m : oracle::connected_graph_masks(n)) c.insert(oracle::canonical_mask(n, m));
        CHECK(c.size() == classes[n]);
    }
}

TEST_CASE("nonmonotone search") {
    for (auto kind : kUndirected) {
        CHECK(oracle::nonmonotone_search(3, kind).empty());
        auto pairs = oracle::nonmonotone_search(4, kind);
        REQUIRE(pairs.size() == 1);
        const auto& p = pairs.front();
        CHECK(p.n == 4);
        CHECK(p.g_edges.size() == 5);
        CHECK(p.h_edges.size() == 4);
        CHECK(p.g_rounds > p.h_rounds);
        auto g = from(4, {});
        for (auto e : p.g_edges) g.add_edge(e.first, e.second);
        auto h = from(4, {});
        for (auto e : p.h_edges) {
            CHECK(g.has_edge(e.first, e.second));
            h.add_edge(e.first, e.second);
        }
        CHECK(is_connected(h));
        CHECK(h.min_degree() == 2);  // C4 inside the diamond
        CHECK(p.g_exact == (kind == ProcessKind::Triangulation ? "81/32" : "9/5"));
        CHECK(p.h_exact == (kind == ProcessKind::Triangulation ? "499/240" : "134/75"));
    }
    CHECK_THROWS_AS(oracle::nonmonotone_search(6, ProcessKind::Triangulation), std::invalid_argument);
    CHECK_THROWS_AS(oracle::nonmonotone_search(4, ProcessKind::TwoHopDirected), std::invalid_argument);
}

TEST_CASE("empirical_vs_exact") {
    auto report = oracle::empirical_vs_exact(AnyGraph{path_graph(4)}, ProcessKind::Triangulation, 20'000, 17);
    CHECK(report.trials == 20'000);
    CHECK(report.exact_rounds == doctest::Approx(515.0 / 96));
    CHECK(std::abs(report.z) < 4.5);
    CHECK(report.p_value > 1e-4);
    CHECK(report.degrees_of_freedom >= 1);

    auto j = nlohmann::json::parse(report.to_json());
    for (auto k : {"graph", "kind", "trials", "mean_rounds", "exact_rounds", "z", "chi_square", "p_value"})
        CHECK(j.contains(k));
    CHECK(j["kind"] == "tri");
    CHECK(report.to_json().rfind("{\"graph\":", 0) == 0);

    auto again = oracle::empirical_vs_exact(AnyGraph{path_graph(4)}, ProcessKind::Triangulation, 20'000, 17);
    CHECK(again.mean_rounds == report.mean_rounds);
}
