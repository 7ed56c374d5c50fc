#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gossip/rng.hpp"

namespace gossip {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;
using NodeSet = std::vector<NodeId>;  // sorted, duplicate-free

class GraphError : public std::runtime_error {
public:
    enum class Code { SelfLoop, BadNode, IsolatedNode, Disconnected, Parse, KindMismatch };

    GraphError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Code code() const noexcept { return code_; }

private:
    Code code_;
};

/// Simple undirected graph whose edge set only grows.
///
/// Neighbors live in per-node arrays (uniform sampling by index) next to a
/// dense n*n membership matrix (O(1) adjacency tests). Both are updated
/// together by add_edge, which is the only mutator.
class UndirectedGraph {
public:
    UndirectedGraph() = default;
    explicit UndirectedGraph(std::size_t n);

    std::size_t node_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edge_count_; }
    std::size_t missing_count() const noexcept { return n_ * (n_ - 1) / 2 - edge_count_; }
    bool is_complete() const noexcept { return missing_count() == 0; }

    /// Inserts {u, v}. Returns false if the edge was already present.
    /// Throws GraphError (SelfLoop, BadNode).
    bool add_edge(NodeId u, NodeId v);
    bool has_edge(NodeId u, NodeId v) const noexcept { return matrix_[index(u, v)] != 0; }

    std::span<const NodeId> neighbors(NodeId u) const { return adjacency_[u]; }
    std::size_t degree(NodeId u) const { return adjacency_[u].size(); }
    std::size_t min_degree() const noexcept;

    /// Uniform draw from the neighbors of u. Throws GraphError (IsolatedNode).
    NodeId sample_neighbor(NodeId u, Rng& rng) const;

    /// All edges as (u, v) with u < v, sorted.
    std::vector<Edge> edges() const;

    friend bool operator==(const UndirectedGraph& a, const UndirectedGraph& b) {
        return a.n_ == b.n_ && a.matrix_ == b.matrix_;
    }

private:
    std::size_t index(NodeId u, NodeId v) const noexcept { return std::size_t{u} * n_ + v; }
    void check_pair(NodeId u, NodeId v) const;

    std::size_t n_ = 0;
    std::size_t edge_count_ = 0;
    std::vector<std::vector<NodeId>> adjacency_;
    std::vector<std::uint8_t> matrix_;
};

/// Simple digraph whose edge set only grows. Same layout as UndirectedGraph,
/// over out-neighbors.
class DirectedGraph {
public:
    DirectedGraph() = default;
    explicit DirectedGraph(std::size_t n);

    std::size_t node_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edge_count_; }

    bool add_edge(NodeId from, NodeId to);
    bool has_edge(NodeId from, NodeId to) const noexcept { return matrix_[index(from, to)] != 0; }

    std::span<const NodeId> successors(NodeId u) const { return out_[u]; }
    std::size_t out_degree(NodeId u) const { return out_[u].size(); }
    std::size_t min_out_degree() const noexcept;

    NodeId sample_successor(NodeId u, Rng& rng) const;

    /// All edges sorted lexicographically.
    std::vector<Edge> edges() const;

    friend bool operator==(const DirectedGraph& a, const DirectedGraph& b) {
        return a.n_ == b.n_ && a.matrix_ == b.matrix_;
    }

private:
    std::size_t index(NodeId u, NodeId v) const noexcept { return std::size_t{u} * n_ + v; }
    void check_pair(NodeId u, NodeId v) const;

    std::size_t n_ = 0;
    std::size_t edge_count_ = 0;
    std::vector<std::vector<NodeId>> out_;
    std::vector<std::uint8_t> matrix_;
};

UndirectedGraph make_undirected(std::size_t n, std::span<const Edge> edges);
DirectedGraph make_directed(std::size_t n, std::span<const Edge> edges);

// Queries used by the processes and the instrumentation.

/// Nodes at shortest-path distance exactly `distance` (>= 1) from u.
NodeSet khop_neighborhood(const UndirectedGraph& g, NodeId u, std::size_t distance);

/// Nodes at distance 1..radius from u (u excluded).
NodeSet ball(const UndirectedGraph& g, NodeId u, std::size_t radius);

/// |adj(v) ∩ s|
std::size_t induced_degree(const UndirectedGraph& g, NodeId v, std::span<const NodeId> s);

bool is_connected(const UndirectedGraph& g);

/// Nodes reachable from u by a directed path of length >= 1 (u itself only
/// if it lies on a cycle).
std::vector<bool> reachable_from(const DirectedGraph& g, NodeId u);

/// Reachability digraph without self-loops.
DirectedGraph transitive_closure(const DirectedGraph& g);

bool is_strongly_connected(const DirectedGraph& g);
bool is_weakly_connected(const DirectedGraph& g);

}  // namespace gossip
