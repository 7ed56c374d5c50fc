#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gossip/graph.hpp"
#include "gossip/process.hpp"

namespace gossip {

// ---------------------------------------------------------------------------
// Tie classes
// ---------------------------------------------------------------------------

enum class TieClass { Strong, Weak };

/// Strong iff v has at least delta0 / 2 edges into s (real threshold).
TieClass tie_class(const UndirectedGraph& g, NodeId v, std::span<const NodeId> s, std::size_t delta0);

/// Number of pairs (u, w) with w a neighbor of u that is strongly tied to
/// the two-hop neighborhood of u. Costs one truncated BFS per node.
std::size_t strong_tie_count(const UndirectedGraph& g, std::size_t delta0);

// ---------------------------------------------------------------------------
// Untouched cuts on the chain instance
// ---------------------------------------------------------------------------
//
// Cuts use the 1-indexed labels of directed_strong_lb: C_x separates labels
// {1..x} from {x+1..n}, and is untouched when its only crossing edge is the
// chain edge (x, x+1). Label k is stored as node k-1.

/// Least x in [chain_start, n-1] whose cut is untouched, by a full scan.
std::optional<std::size_t> smallest_untouched_cut(const DirectedGraph& g, std::size_t chain_start);

/// Incremental version of smallest_untouched_cut. Touched cuts never become
/// untouched again (edges only grow), so each cut is marked once through a
/// next-untouched pointer forest.
class CutTracker {
public:
    CutTracker(const DirectedGraph& g, std::size_t chain_start);

    void add_edge(NodeId from, NodeId to);
    std::optional<std::size_t> smallest_untouched() const;

private:
    std::size_t find(std::size_t x) const;
    void mark_range(std::size_t first, std::size_t last);

    std::size_t n_;
    std::size_t chain_start_;
    mutable std::vector<std::size_t> next_;  // path-compressed; next_[x] == x means untouched
};

// ---------------------------------------------------------------------------
// Chain-edge probability recurrence
// ---------------------------------------------------------------------------

inline constexpr double kDefaultAlpha = 9.0;
inline constexpr double kDefaultEps = 0.01;

/// q[h][t] majorizes the probability that the chain edge spanning h hops is
/// present at the start of round t.
struct PhTable {
    std::size_t n = 0;
    std::size_t max_h = 0;   // H
    std::size_t rounds = 0;  // T
    double alpha = kDefaultAlpha;
    double eps = kDefaultEps;
    std::vector<std::vector<double>> q;  // q[h][t], h in [0, H], t in [0, T]; rows 0 and 1 unused

    double at(std::size_t h, std::size_t t) const { return q.at(h).at(t); }
};

struct PhConstantCheck {
    bool alpha_ok = false;  // alpha >= 4 + 4 / (1 - alpha*eps), with alpha*eps < 1
    bool eps_ok = false;    // (4 - 3 eps + eps^2) / (1 - eps)^3 <= 5
    bool ok() const { return alpha_ok && eps_ok; }
};

PhConstantCheck check_ph_constants(double alpha, double eps);

/// Iterates
///   q[h][t+1] = q[h][t] + 4/n² * max_i ( Σ_{k=1}^{i-1} q[h+k][t]
///                                      + Σ_{k=1}^{h-1} q[k][t] q[h-k][t]
///                                      + Σ_{k=h+1}^{n-i} q[k][t] )
/// with q[1][t] = 1, q[h][0] = 0 for h >= 2, clamped to 1. The maximum is
/// over chain positions i in [1, n-h]. Every h up to n-1 is iterated; rows
/// beyond max_h are dropped from the result.
PhTable ph_recurrence(std::size_t n, std::size_t rounds, std::size_t max_h, double alpha = kDefaultAlpha,
                      double eps = kDefaultEps);

/// True iff q[h][t] <= (alpha t / n²)^(h-1) for 2 <= h <= H and
/// 1 <= t <= min(T, eps n²).
bool ph_bound_check(const PhTable& table);

// ---------------------------------------------------------------------------
// Round traces
// ---------------------------------------------------------------------------

/// Post-round state. For directed runs min_degree is the minimum out-degree
/// and missing_edges counts closure edges not yet present.
struct RoundTrace {
    std::uint64_t round = 0;
    std::size_t min_degree = 0;
    std::size_t missing_edges = 0;
    std::size_t edges_added = 0;
    std::optional<std::size_t> smallest_untouched_cut;
    std::optional<std::size_t> strong_tie_count;
    std::size_t tie_baseline = 0;  // delta_0 of the epoch in force; 0 when ties are off
};

struct TraceOptions {
    bool strong_ties = false;                // undirected only
    std::optional<std::size_t> cut_start;    // directed chain instances only
};

/// Collects one RoundTrace per round of a run. Counters are O(n) per round;
/// tie counts and cut tracking run only when enabled.
///
/// The tie threshold's delta_0 is re-based when the minimum degree reaches
/// min(ceil(13/12 delta_0), n-1), i.e. at the end of each growth epoch.
class TraceCollector : public RoundObserver {
public:
    explicit TraceCollector(TraceOptions options = {}) : options_(options) {}

    void on_start(const UndirectedGraph& g) override;
    void on_start(const DirectedGraph& g) override;
    void on_round(const RoundOutcome& outcome, const UndirectedGraph& g) override;
    void on_round(const RoundOutcome& outcome, const DirectedGraph& g) override;

    const std::vector<RoundTrace>& traces() const noexcept { return traces_; }
    std::optional<std::size_t> initial_cut() const noexcept { return initial_cut_; }

private:
    void rebase(std::size_t min_degree, std::size_t n);

    TraceOptions options_;
    std::vector<RoundTrace> traces_;
    std::size_t delta0_ = 0;
    std::size_t epoch_target_ = 0;
    std::size_t closure_edges_ = 0;
    std::optional<CutTracker> cuts_;
    std::optional<std::size_t> initial_cut_;
};

/// CSV with header round,min_degree,missing_edges,edges_added,smallest_untouched_cut,strong_tie_count.
/// Disabled optional fields are empty strings.
std::string traces_to_csv(std::span<const RoundTrace> traces);

}  // namespace gossip
