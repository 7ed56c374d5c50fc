#include "gossip/generators.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "gossip/rng.hpp"

namespace gossip {

std::string_view to_string(Family family) noexcept {
    switch (family) {
        case Family::Path: return "path";
        case Family::Cycle: return "cycle";
        case Family::Star: return "star";
        case Family::Complete: return "complete";
        case Family::RandomConnected: return "random";
        case Family::Lollipop: return "lollipop";
        case Family::DirectedWeakLB: return "dweak";
        case Family::DirectedStrongLB: return "dstrong";
    }
    return "?";
}

std::optional<Family> parse_family(std::string_view name) noexcept {
    for (auto f : {Family::Path, Family::Cycle, Family::Star, Family::Complete, Family::RandomConnected,
                   Family::Lollipop, Family::DirectedWeakLB, Family::DirectedStrongLB})
        if (to_string(f) == name) return f;
    return std::nullopt;
}

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw ConstraintError(what);
}

void require_min_nodes(std::size_t n, std::size_t min, std::string_view family) {
    require(n >= min, std::string(family) + " requires n >= " + std::to_string(min) + " (got " +
                          std::to_string(n) + ")");
}

}  // namespace

UndirectedGraph path_graph(std::size_t n) {
    require_min_nodes(n, 2, "path");
    UndirectedGraph g(n);
    for (NodeId u = 0; u + 1 < n; ++u) g.add_edge(u, u + 1);
    return g;
}

UndirectedGraph cycle_graph(std::size_t n) {
    require_min_nodes(n, 3, "cycle");
    UndirectedGraph g(n);
    for (NodeId u = 0; u < n; ++u) g.add_edge(u, static_cast<NodeId>((u + 1) % n));
    return g;
}

UndirectedGraph star_graph(std::size_t n) {
    require_min_nodes(n, 2, "star");
    UndirectedGraph g(n);
    for (NodeId u = 1; u < n; ++u) g.add_edge(0, u);
    return g;
}

UndirectedGraph complete_graph(std::size_t n) {
    require_min_nodes(n, 2, "complete");
    UndirectedGraph g(n);
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

UndirectedGraph random_connected(std::size_t n, double p, std::uint64_t seed) {
    require_min_nodes(n, 2, "random");
    require(p >= 0.0 && p <= 1.0, "random requires p in [0, 1]");
    Rng rng(seed);
    UndirectedGraph g(n);

    // Prüfer decoding: a uniform sequence in [0,n)^(n-2) is a uniform labeled tree.
    std::vector<NodeId> code(n - 2);
    for (auto& c : code) c = static_cast<NodeId>(rng.below(n));
    std::vector<std::size_t> remaining(n, 1);
    for (NodeId c : code) ++remaining[c];
    std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> leaves;
    for (NodeId u = 0; u < n; ++u)
        if (remaining[u] == 1) leaves.push(u);
    for (NodeId c : code) {
        NodeId leaf = leaves.top();
        leaves.pop();
        g.add_edge(leaf, c);
        if (--remaining[c] == 1) leaves.push(c);
    }
    NodeId a = leaves.top();
    leaves.pop();
    g.add_edge(a, leaves.top());

    for (NodeId u = 0; u < n; ++u)
        for (NodeId v = u + 1; v < n; ++v)
            if (!g.has_edge(u, v) && rng.unit() < p) g.add_edge(u, v);
    return g;
}

UndirectedGraph lollipop_graph(std::size_t n, double clique_frac) {
    require_min_nodes(n, 2, "lollipop");
    require(clique_frac > 0.0 && clique_frac <= 1.0, "lollipop requires clique_frac in (0, 1]");
    auto k = static_cast<std::size_t>(std::lround(clique_frac * static_cast<double>(n)));
    k = std::clamp<std::size_t>(k, 2, n);
    UndirectedGraph g(n);
    for (NodeId u = 0; u < k; ++u)
        for (NodeId v = u + 1; v < k; ++v) g.add_edge(u, v);
    for (NodeId u = static_cast<NodeId>(k - 1); u + 1 < n; ++u) g.add_edge(u, u + 1);
    return g;
}

DirectedGraph directed_weak_lb(std::size_t n) {
    require(n >= 4 && n % 4 == 0, "dweak requires n divisible by 4 (got " + std::to_string(n) + ")");
    DirectedGraph g(n);
    const std::size_t chains = n / 4;
    for (NodeId i = 0; i < chains; ++i) {
        g.add_edge(3 * i, 3 * i + 1);
        g.add_edge(3 * i + 1, 3 * i + 2);
    }
    for (NodeId i = 0; i < chains; ++i) {
        for (auto j = static_cast<NodeId>(3 * n / 4); j < n; ++j) {
            g.add_edge(3 * i, j);
            g.add_edge(3 * i + 1, j);
        }
    }
    return g;
}

DirectedGraph directed_strong_lb(std::size_t n) {
    require(n >= 4 && n % 2 == 0, "dstrong requires even n >= 4 (got " + std::to_string(n) + ")");
    DirectedGraph g(n);
    const std::size_t half = n / 2;
    // 1-indexed labels throughout; node(label) = label - 1.
    auto add = [&](std::size_t from, std::size_t to) {
        g.add_edge(static_cast<NodeId>(from - 1), static_cast<NodeId>(to - 1));
    };
    for (std::size_t i = 1; i <= half; ++i)
        for (std::size_t j = 1; j <= half; ++j)
            if (i != j) add(i, j);
    for (std::size_t i = half; i < n; ++i) add(i, i + 1);
    for (std::size_t i = half + 1; i <= n; ++i)
        for (std::size_t j = 1; j < i; ++j) add(i, j);
    return g;
}

AnyGraph generate(const FamilySpec& spec, std::size_t n, std::uint64_t seed) {
    switch (spec.family) {
        case Family::Path: return path_graph(n);
        case Family::Cycle: return cycle_graph(n);
        case Family::Star: return star_graph(n);
        case Family::Complete: return complete_graph(n);
        case Family::RandomConnected: return random_connected(n, spec.p, seed);
        case Family::Lollipop: return lollipop_graph(n, spec.clique_frac);
        case Family::DirectedWeakLB: return directed_weak_lb(n);
        case Family::DirectedStrongLB: return directed_strong_lb(n);
    }
    throw ConstraintError("unknown family");
}

}  // namespace gossip
