#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gossip/edge_list.hpp"
#include "gossip/graph.hpp"
#include "gossip/process.hpp"

namespace gossip::oracle {

using Rational = boost::multiprecision::cpp_rational;

/// Largest node count the bitmask state encoding supports (56 directed pairs).
inline constexpr std::size_t kMaxNodes = 8;
/// Joint per-round choice space above which enumeration is refused.
inline constexpr double kMaxChoiceSpace = 1e7;
/// Missing edges above which the absorbing chain is refused.
inline constexpr std::size_t kMaxMissingEdges = 20;
/// Node counts at or below this use exact rationals in expected_rounds().
inline constexpr std::size_t kExactNodeLimit = 4;

/// Raised when an instance is too large to enumerate; what() carries the size.
class OracleRefusal : public std::runtime_error {
public:
    OracleRefusal(const std::string& what, double size) : std::runtime_error(what), size_(size) {}
    double size() const noexcept { return size_; }

private:
    double size_;
};

/// Bit positions for node pairs: {u, v} (u < v) when undirected, (u, v) when
/// directed.
class PairIndex {
public:
    PairIndex(std::size_t n, bool directed);

    std::size_t node_count() const noexcept { return n_; }
    bool directed() const noexcept { return directed_; }
    std::size_t size() const noexcept { return edges_.size(); }
    unsigned bit(NodeId u, NodeId v) const;
    std::uint64_t mask(NodeId u, NodeId v) const { return std::uint64_t{1} << bit(u, v); }
    Edge edge(unsigned bit) const { return edges_.at(bit); }
    std::vector<Edge> edges(std::uint64_t mask) const;

    std::uint64_t mask_of(const UndirectedGraph& g) const;
    std::uint64_t mask_of(const DirectedGraph& g) const;
    UndirectedGraph undirected(std::uint64_t mask) const;
    DirectedGraph directed_graph(std::uint64_t mask) const;

private:
    std::size_t n_;
    bool directed_;
    std::vector<Edge> edges_;
    std::vector<int> bits_;  // n*n, -1 for the diagonal (and lower triangle if undirected)
};

/// Law of the set of edges added in one round, keyed by PairIndex mask.
template <class Scalar>
using RoundLaw = std::map<std::uint64_t, Scalar>;

/// Exact single-round law by enumeration of every joint choice under
/// snapshot semantics. Throws OracleRefusal when the product of per-node
/// choice counts exceeds kMaxChoiceSpace, GraphError on kind mismatch or an
/// isolated node.
RoundLaw<Rational> single_round_distribution(const UndirectedGraph& g, ProcessKind kind);
RoundLaw<Rational> single_round_distribution(const DirectedGraph& g, ProcessKind kind);
RoundLaw<double> single_round_distribution_double(const UndirectedGraph& g, ProcessKind kind);
RoundLaw<double> single_round_distribution_double(const DirectedGraph& g, ProcessKind kind);

/// Product of per-node choice counts (triangulation d², two-hop Σ d(v)).
double choice_space_size(const UndirectedGraph& g, ProcessKind kind);
double choice_space_size(const DirectedGraph& g, ProcessKind kind);

/// Expected number of rounds until absorption (complete graph, or the
/// transitive closure for the directed walk), by back-substitution over the
/// edge-superset lattice. Throws OracleRefusal beyond kMaxMissingEdges.
Rational expected_rounds_exact(const UndirectedGraph& g, ProcessKind kind);
Rational expected_rounds_exact(const DirectedGraph& g, ProcessKind kind);

/// Exact for n <= kExactNodeLimit, double arithmetic above.
double expected_rounds(const UndirectedGraph& g, ProcessKind kind);
double expected_rounds(const DirectedGraph& g, ProcessKind kind);

/// A connected graph G and a connected spanning subgraph H of it for which
/// G takes longer in expectation.
struct NonmonotonePair {
    std::size_t n = 0;
    std::vector<Edge> g_edges;
    std::vector<Edge> h_edges;
    double g_rounds = 0.0;
    double h_rounds = 0.0;
    std::string g_exact;  // "p/q" when computed exactly, empty otherwise
    std::string h_exact;
};

/// Exhaustive search over connected graphs on 2..max_n nodes (max_n <= 5),
/// one representative per isomorphism class of (G, H) pairs. Undirected
/// kinds only.
std::vector<NonmonotonePair> nonmonotone_search(std::size_t max_n, ProcessKind kind);

/// Canonical form: the minimum edge mask over all relabelings.
std::uint64_t canonical_mask(std::size_t n, std::uint64_t mask);

/// Every connected labeled graph on n nodes (n <= 5), as undirected masks.
std::vector<std::uint64_t> connected_graph_masks(std::size_t n);

struct EmpiricalReport {
    std::string graph;  // edge-list text
    ProcessKind kind = ProcessKind::Triangulation;
    std::uint64_t trials = 0;
    double mean_rounds = 0.0;
    double exact_rounds = 0.0;
    double z = 0.0;
    double chi_square = 0.0;
    std::size_t degrees_of_freedom = 0;
    double p_value = 1.0;

    /// {graph, kind, trials, mean_rounds, exact_rounds, z, chi_square, p_value}
    std::string to_json() const;
};

/// Runs the process `trials` times (trial i seeded by trial_seed(seed, i))
/// and compares the mean round count with expected_rounds and the round-0
/// edge sets with single_round_distribution. Expected bin counts below 5 are
/// pooled before the chi-square test.
EmpiricalReport empirical_vs_exact(const AnyGraph& g, ProcessKind kind, std::uint64_t trials, std::uint64_t seed);

}  // namespace gossip::oracle
