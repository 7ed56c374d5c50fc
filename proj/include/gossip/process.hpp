#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "gossip/graph.hpp"
#include "gossip/rng.hpp"

namespace gossip {

enum class ProcessKind { Triangulation, TwoHopUndirected, TwoHopDirected };

/// CLI names: tri, twohop, dtwohop.
std::string_view to_string(ProcessKind kind) noexcept;
std::optional<ProcessKind> parse_process_kind(std::string_view name) noexcept;
inline bool is_directed(ProcessKind kind) noexcept { return kind == ProcessKind::TwoHopDirected; }

inline constexpr std::uint64_t kDefaultMaxRounds = 10'000'000;

struct ProcessConfig {
    ProcessKind kind = ProcessKind::Triangulation;
    std::uint64_t seed = 0;
    std::uint64_t max_rounds = kDefaultMaxRounds;
    // Draws always read the round-start graph. Reserved; must stay true.
    bool snapshot = true;

    /// Throws std::invalid_argument on max_rounds == 0 or snapshot == false.
    void validate() const;
};

struct RoundOutcome {
    std::uint64_t round_index = 0;
    std::vector<Edge> edges_added;  // in queue order; no duplicates, none pre-existing
    std::size_t new_edge_count = 0;
};

/// Sees every random draw a round makes. `pool_owner` is the node whose
/// neighbor set was sampled; `pool_size` is the size of that set as seen by
/// the draw.
class DrawProbe {
public:
    virtual ~DrawProbe() = default;
    virtual void on_draw(NodeId pool_owner, NodeId drawn, std::size_t pool_size) = 0;
};

// One synchronous round each. All draws read the graph as it was when the
// round started; queued edges are inserted after the last node has drawn.

/// Each node introduces two independent uniform neighbors (ordered, with
/// replacement). Throws GraphError(IsolatedNode) naming the first isolated node.
RoundOutcome triangulation_round(UndirectedGraph& g, Rng& rng, std::uint64_t round_index = 0,
                                 DrawProbe* probe = nullptr);

/// Each node walks two uniform hops and links to the endpoint (no-op if the
/// walk returns home).
RoundOutcome twohop_round(UndirectedGraph& g, Rng& rng, std::uint64_t round_index = 0,
                          DrawProbe* probe = nullptr);

/// Directed two-hop walk. Sinks draw nothing; a first hop into a sink ends
/// the walk after one draw.
RoundOutcome directed_twohop_round(DirectedGraph& g, Rng& rng, std::uint64_t round_index = 0,
                                   DrawProbe* probe = nullptr);

/// Receives each completed round together with the post-round graph.
class RoundObserver {
public:
    virtual ~RoundObserver() = default;
    virtual void on_start(const UndirectedGraph&) {}
    virtual void on_start(const DirectedGraph&) {}
    virtual void on_round(const RoundOutcome&, const UndirectedGraph&) {}
    virtual void on_round(const RoundOutcome&, const DirectedGraph&) {}
};

struct RunResult {
    std::uint64_t rounds = 0;
    bool capped = false;
    std::size_t final_edges = 0;
    // Nodes whose degree more than doubled in one triangulation round.
    std::uint64_t doubling_violations = 0;
};

/// Runs rounds until the graph is complete, or until max_rounds. Throws
/// GraphError(KindMismatch) for a directed kind and GraphError(Disconnected)
/// before round 0 when g is not connected.
RunResult run_to_convergence(UndirectedGraph& g, const ProcessConfig& config,
                             RoundObserver* observer = nullptr);

/// Runs rounds until the edge set equals the transitive closure of the input
/// graph, or until max_rounds.
RunResult run_to_convergence(DirectedGraph& g, const ProcessConfig& config,
                             RoundObserver* observer = nullptr);

}  // namespace gossip
