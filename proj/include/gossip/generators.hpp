#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "gossip/edge_list.hpp"
#include "gossip/graph.hpp"

namespace gossip {

enum class Family { Path, Cycle, Star, Complete, RandomConnected, Lollipop, DirectedWeakLB, DirectedStrongLB };

/// CLI names: path, cycle, star, complete, random, lollipop, dweak, dstrong.
std::string_view to_string(Family family) noexcept;
std::optional<Family> parse_family(std::string_view name) noexcept;
inline bool is_directed(Family f) noexcept {
    return f == Family::DirectedWeakLB || f == Family::DirectedStrongLB;
}

struct FamilySpec {
    Family family = Family::Path;
    double p = 0.0;             // RandomConnected: extra-edge probability
    double clique_frac = 0.5;   // Lollipop: clique share of the nodes
};

/// Thrown when a family's size or parameter constraint is violated.
class ConstraintError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

UndirectedGraph path_graph(std::size_t n);
UndirectedGraph cycle_graph(std::size_t n);
UndirectedGraph star_graph(std::size_t n);
UndirectedGraph complete_graph(std::size_t n);

/// Uniform random labeled spanning tree (Prüfer decoding) plus every other
/// pair independently with probability p.
UndirectedGraph random_connected(std::size_t n, double p, std::uint64_t seed);

/// Clique on the first round(clique_frac * n) nodes (at least 2) with a
/// path hanging off the last clique node.
UndirectedGraph lollipop_graph(std::size_t n, double clique_frac);

/// Weakly connected instance that needs Θ(n² log n) rounds: n/4 chains
/// 3i -> 3i+1 -> 3i+2 whose first two nodes also point at every hub
/// j in [3n/4, n). Only the n/4 shortcuts (3i, 3i+2) are missing from the
/// closure. Requires n % 4 == 0.
DirectedGraph directed_weak_lb(std::size_t n);

/// Strongly connected instance that needs Ω(n²) rounds. In 1-indexed labels:
/// complete digraph on {1..n/2}, a chain n/2 -> n/2+1 -> ... -> n, and every
/// back edge (i, j) with i > j, i > n/2. Stored 0-indexed (label k is node
/// k-1). Requires even n >= 4.
DirectedGraph directed_strong_lb(std::size_t n);

/// Deterministic in (spec, n, seed). Throws ConstraintError.
AnyGraph generate(const FamilySpec& spec, std::size_t n, std::uint64_t seed = 0);

}  // namespace gossip
