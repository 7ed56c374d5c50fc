#include "gossip/process.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace gossip {

std::string_view to_string(ProcessKind kind) noexcept {
    switch (kind) {
        case ProcessKind::Triangulation: return "tri";
        case ProcessKind::TwoHopUndirected: return "twohop";
        case ProcessKind::TwoHopDirected: return "dtwohop";
    }
    return "?";
}

std::optional<ProcessKind> parse_process_kind(std::string_view name) noexcept {
    for (auto kind : {ProcessKind::Triangulation, ProcessKind::TwoHopUndirected, ProcessKind::TwoHopDirected})
        if (to_string(kind) == name) return kind;
    return std::nullopt;
}

void ProcessConfig::validate() const {
    if (max_rounds == 0) throw std::invalid_argument("max_rounds must be >= 1");
    if (!snapshot) throw std::invalid_argument("only snapshot semantics are supported");
}

namespace {

void require_no_isolated(const UndirectedGraph& g) {
    for (NodeId u = 0; u < g.node_count(); ++u) {
        if (g.degree(u) == 0) {
            throw GraphError(GraphError::Code::IsolatedNode, "node " + std::to_string(u) + " is isolated");
        }
    }
}

NodeId draw(const UndirectedGraph& g, NodeId owner, Rng& rng, DrawProbe* probe) {
    NodeId x = g.sample_neighbor(owner, rng);
    if (probe) probe->on_draw(owner, x, g.degree(owner));
    return x;
}

NodeId draw(const DirectedGraph& g, NodeId owner, Rng& rng, DrawProbe* probe) {
    NodeId x = g.sample_successor(owner, rng);
    if (probe) probe->on_draw(owner, x, g.out_degree(owner));
    return x;
}

// Applies queued proposals in order. Proposals were filtered against the
// round-start graph, so the only rejections here are same-round duplicates.
template <class Graph>
RoundOutcome commit(Graph& g, std::vector<Edge>& queue, std::uint64_t round_index) {
    RoundOutcome out;
    out.round_index = round_index;
    for (auto [a, b] : queue)
        if (g.add_edge(a, b)) out.edges_added.emplace_back(a, b);
    out.new_edge_count = out.edges_added.size();
    return out;
}

Edge normalized(NodeId a, NodeId b) { return a < b ? Edge{a, b} : Edge{b, a}; }

}  // namespace

RoundOutcome triangulation_round(UndirectedGraph& g, Rng& rng, std::uint64_t round_index, DrawProbe* probe) {
    require_no_isolated(g);
    std::vector<Edge> queue;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        NodeId v = draw(g, u, rng, probe);
        NodeId w = draw(g, u, rng, probe);
        if (v != w && !g.has_edge(v, w)) queue.push_back(normalized(v, w));
    }
    return commit(g, queue, round_index);
}

RoundOutcome twohop_round(UndirectedGraph& g, Rng& rng, std::uint64_t round_index, DrawProbe* probe) {
    require_no_isolated(g);
    std::vector<Edge> queue;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        NodeId v = draw(g, u, rng, probe);
        NodeId w = draw(g, v, rng, probe);
        if (w != u && !g.has_edge(u, w)) queue.push_back(normalized(u, w));
    }
    return commit(g, queue, round_index);
}

RoundOutcome directed_twohop_round(DirectedGraph& g, Rng& rng, std::uint64_t round_index, DrawProbe* probe) {
    std::vector<Edge> queue;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        if (g.out_degree(u) == 0) continue;
        NodeId v = draw(g, u, rng, probe);
        if (g.out_degree(v) == 0) continue;
        NodeId w = draw(g, v, rng, probe);
        if (w != u && !g.has_edge(u, w)) queue.emplace_back(u, w);
    }
    return commit(g, queue, round_index);
}

RunResult run_to_convergence(UndirectedGraph& g, const ProcessConfig& config, RoundObserver* observer) {
    config.validate();
    if (is_directed(config.kind)) {
        throw GraphError(GraphError::Code::KindMismatch, "directed process on an undirected graph");
    }
    if (!is_connected(g)) throw GraphError(GraphError::Code::Disconnected, "input graph is not connected");

    Rng rng(config.seed);
    RunResult result;
    if (observer) observer->on_start(g);

    const bool triangulation = config.kind == ProcessKind::Triangulation;
    std::vector<std::size_t> before;
    while (!g.is_complete()) {
        if (result.rounds == config.max_rounds) {
            result.capped = true;
            break;
        }
        if (triangulation) {
            before.resize(g.node_count());
            for (NodeId u = 0; u < g.node_count(); ++u) before[u] = g.degree(u);
        }
        RoundOutcome outcome = triangulation ? triangulation_round(g, rng, result.rounds)
                                             : twohop_round(g, rng, result.rounds);
        if (triangulation) {
            for (NodeId u = 0; u < g.node_count(); ++u)
                if (g.degree(u) > 2 * before[u]) ++result.doubling_violations;
        }
        ++result.rounds;
        if (observer) observer->on_round(outcome, g);
    }
    result.final_edges = g.edge_count();
    return result;
}

RunResult run_to_convergence(DirectedGraph& g, const ProcessConfig& config, RoundObserver* observer) {
    config.validate();
    if (!is_directed(config.kind)) {
        throw GraphError(GraphError::Code::KindMismatch, "undirected process on a directed graph");
    }
    const std::size_t target_edges = transitive_closure(g).edge_count();

    Rng rng(config.seed);
    RunResult result;
    if (observer) observer->on_start(g);
    while (g.edge_count() != target_edges) {
        if (result.rounds == config.max_rounds) {
            result.capped = true;
            break;
        }
        RoundOutcome outcome = directed_twohop_round(g, rng, result.rounds);
        ++result.rounds;
        if (observer) observer->on_round(outcome, g);
    }
    result.final_edges = g.edge_count();
    return result;
}

}  // namespace gossip
