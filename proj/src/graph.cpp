#include "gossip/graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace gossip {

namespace {

[[noreturn]] void bad_node(NodeId u, std::size_t n) {
    throw GraphError(GraphError::Code::BadNode,
                     "node " + std::to_string(u) + " out of range for n=" + std::to_string(n));
}

[[noreturn]] void self_loop(NodeId u) {
    throw GraphError(GraphError::Code::SelfLoop, "self-loop at node " + std::to_string(u));
}

}  // namespace

UndirectedGraph::UndirectedGraph(std::size_t n) : n_(n), adjacency_(n), matrix_(n * n, 0) {}

void UndirectedGraph::check_pair(NodeId u, NodeId v) const {
    if (u >= n_) bad_node(u, n_);
    if (v >= n_) bad_node(v, n_);
    if (u == v) self_loop(u);
}

bool UndirectedGraph::add_edge(NodeId u, NodeId v) {
    check_pair(u, v);
    if (matrix_[index(u, v)]) return false;
    matrix_[index(u, v)] = 1;
    matrix_[index(v, u)] = 1;
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
    ++edge_count_;
    return true;
}

std::size_t UndirectedGraph::min_degree() const noexcept {
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (const auto& a : adjacency_) best = std::min(best, a.size());
    return n_ == 0 ? 0 : best;
}

NodeId UndirectedGraph::sample_neighbor(NodeId u, Rng& rng) const {
    if (u >= n_) bad_node(u, n_);
    const auto& a = adjacency_[u];
    if (a.empty()) {
        throw GraphError(GraphError::Code::IsolatedNode, "node " + std::to_string(u) + " has no neighbors");
    }
    return a[rng.below(a.size())];
}

std::vector<Edge> UndirectedGraph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (NodeId u = 0; u < n_; ++u)
        for (NodeId v = u + 1; v < n_; ++v)
            if (matrix_[index(u, v)]) out.emplace_back(u, v);
    return out;
}

DirectedGraph::DirectedGraph(std::size_t n) : n_(n), out_(n), matrix_(n * n, 0) {}

void DirectedGraph::check_pair(NodeId u, NodeId v) const {
    if (u >= n_) bad_node(u, n_);
    if (v >= n_) bad_node(v, n_);
    if (u == v) self_loop(u);
}

bool DirectedGraph::add_edge(NodeId from, NodeId to) {
    check_pair(from, to);
    if (matrix_[index(from, to)]) return false;
    matrix_[index(from, to)] = 1;
    out_[from].push_back(to);
    ++edge_count_;
    return true;
}

std::size_t DirectedGraph::min_out_degree() const noexcept {
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (const auto& a : out_) best = std::min(best, a.size());
    return n_ == 0 ? 0 : best;
}

NodeId DirectedGraph::sample_successor(NodeId u, Rng& rng) const {
    if (u >= n_) bad_node(u, n_);
    const auto& a = out_[u];
    if (a.empty()) {
        throw GraphError(GraphError::Code::IsolatedNode, "node " + std::to_string(u) + " has no successors");
    }
    return a[rng.below(a.size())];
}

std::vector<Edge> DirectedGraph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (NodeId u = 0; u < n_; ++u)
        for (NodeId v = 0; v < n_; ++v)
            if (matrix_[index(u, v)]) out.emplace_back(u, v);
    return out;
}

UndirectedGraph make_undirected(std::size_t n, std::span<const Edge> edges) {
    UndirectedGraph g(n);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
}

DirectedGraph make_directed(std::size_t n, std::span<const Edge> edges) {
    DirectedGraph g(n);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
}

namespace {

// Breadth-first distances from u, truncated at `radius` (unreached = max).
std::vector<std::size_t> bfs_distances(const UndirectedGraph& g, NodeId u, std::size_t radius) {
    constexpr auto unreached = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> dist(g.node_count(), unreached);
    std::deque<NodeId> frontier{u};
    dist[u] = 0;
    while (!frontier.empty()) {
        NodeId x = frontier.front();
        frontier.pop_front();
        if (dist[x] == radius) continue;
        for (NodeId y : g.neighbors(x)) {
            if (dist[y] == unreached) {
                dist[y] = dist[x] + 1;
                frontier.push_back(y);
            }
        }
    }
    return dist;
}

}  // namespace

NodeSet khop_neighborhood(const UndirectedGraph& g, NodeId u, std::size_t distance) {
    if (distance == 0) throw std::invalid_argument("khop_neighborhood: distance must be >= 1");
    auto dist = bfs_distances(g, u, distance);
    NodeSet out;
    for (NodeId x = 0; x < g.node_count(); ++x)
        if (dist[x] == distance) out.push_back(x);
    return out;
}

NodeSet ball(const UndirectedGraph& g, NodeId u, std::size_t radius) {
    auto dist = bfs_distances(g, u, radius);
    NodeSet out;
    for (NodeId x = 0; x < g.node_count(); ++x)
        if (x != u && dist[x] <= radius) out.push_back(x);
    return out;
}

std::size_t induced_degree(const UndirectedGraph& g, NodeId v, std::span<const NodeId> s) {
    std::size_t count = 0;
    for (NodeId x : s)
        if (x != v && g.has_edge(v, x)) ++count;
    return count;
}

bool is_connected(const UndirectedGraph& g) {
    if (g.node_count() == 0) return true;
    auto dist = bfs_distances(g, 0, std::numeric_limits<std::size_t>::max());
    return std::none_of(dist.begin(), dist.end(),
                        [](std::size_t d) { return d == std::numeric_limits<std::size_t>::max(); });
}

std::vector<bool> reachable_from(const DirectedGraph& g, NodeId u) {
    std::vector<bool> seen(g.node_count(), false);
    std::vector<NodeId> stack(g.successors(u).begin(), g.successors(u).end());
    for (NodeId v : stack) seen[v] = true;
    while (!stack.empty()) {
        NodeId x = stack.back();
        stack.pop_back();
        for (NodeId y : g.successors(x)) {
            if (!seen[y]) {
                seen[y] = true;
                stack.push_back(y);
            }
        }
    }
    return seen;
}

DirectedGraph transitive_closure(const DirectedGraph& g) {
    const std::size_t n = g.node_count();
    DirectedGraph closure(n);
    for (NodeId u = 0; u < n; ++u) {
        auto seen = reachable_from(g, u);
        for (NodeId v = 0; v < n; ++v)
            if (v != u && seen[v]) closure.add_edge(u, v);
    }
    return closure;
}

bool is_strongly_connected(const DirectedGraph& g) {
    const std::size_t n = g.node_count();
    if (n <= 1) return true;
    for (NodeId u = 0; u < n; ++u) {
        auto seen = reachable_from(g, u);
        for (NodeId v = 0; v < n; ++v)
            if (v != u && !seen[v]) return false;
    }
    return true;
}

bool is_weakly_connected(const DirectedGraph& g) {
    UndirectedGraph shadow(g.node_count());
    for (auto [u, v] : g.edges()) shadow.add_edge(u, v);
    return is_connected(shadow);
}

}  // namespace gossip
