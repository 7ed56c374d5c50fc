#include "gossip/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <set>
#include <unordered_map>

#include <boost/math/special_functions/gamma.hpp>
#include <json.hpp>

#include "gossip/rng.hpp"

namespace gossip::oracle {

PairIndex::PairIndex(std::size_t n, bool directed) : n_(n), directed_(directed), bits_(n * n, -1) {
    if (n > kMaxNodes) throw OracleRefusal("oracle supports at most 8 nodes", static_cast<double>(n));
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = 0; v < n; ++v) {
            if (u == v || (!directed && v < u)) continue;
            bits_[u * n + v] = static_cast<int>(edges_.size());
            edges_.emplace_back(u, v);
        }
    }
}

unsigned PairIndex::bit(NodeId u, NodeId v) const {
    if (!directed_ && v < u) std::swap(u, v);
    int b = bits_.at(std::size_t{u} * n_ + v);
    if (b < 0) throw std::invalid_argument("PairIndex: no bit for a self-pair");
    return static_cast<unsigned>(b);
}

std::vector<Edge> PairIndex::edges(std::uint64_t mask) const {
    std::vector<Edge> out;
    for (unsigned b = 0; b < edges_.size(); ++b)
        if (mask >> b & 1U) out.push_back(edges_[b]);
    return out;
}

std::uint64_t PairIndex::mask_of(const UndirectedGraph& g) const {
    std::uint64_t m = 0;
    for (auto [u, v] : g.edges()) m |= mask(u, v);
    return m;
}

std::uint64_t PairIndex::mask_of(const DirectedGraph& g) const {
    std::uint64_t m = 0;
    for (auto [u, v] : g.edges()) m |= mask(u, v);
    return m;
}

UndirectedGraph PairIndex::undirected(std::uint64_t mask) const {
    auto e = edges(mask);
    return make_undirected(n_, e);
}

DirectedGraph PairIndex::directed_graph(std::uint64_t mask) const {
    auto e = edges(mask);
    return make_directed(n_, e);
}

namespace {

template <class Scalar>
Scalar ratio(std::uint64_t num, std::uint64_t den) {
    if constexpr (std::is_same_v<Scalar, double>) {
        return static_cast<double>(num) / static_cast<double>(den);
    } else {
        return Scalar(num) / Scalar(den);
    }
}

template <class Scalar>
double to_double(const Scalar& x) {
    if constexpr (std::is_same_v<Scalar, double>) {
        return x;
    } else {
        return x.template convert_to<double>();
    }
}

void check_kind(const UndirectedGraph&, ProcessKind kind) {
    if (is_directed(kind)) throw GraphError(GraphError::Code::KindMismatch, "directed process on an undirected graph");
}

void check_kind(const DirectedGraph&, ProcessKind kind) {
    if (!is_directed(kind)) throw GraphError(GraphError::Code::KindMismatch, "undirected process on a directed graph");
}

void check_isolated(const UndirectedGraph& g) {
    for (NodeId u = 0; u < g.node_count(); ++u)
        if (g.degree(u) == 0)
            throw GraphError(GraphError::Code::IsolatedNode, "node " + std::to_string(u) + " is isolated");
}

// Per-node law of the edge that node proposes (mask 0 = no-op), counted in
// equally likely choices: counts[mask] / total.
struct NodeChoices {
    std::map<std::uint64_t, std::uint64_t> counts;
    std::uint64_t total = 0;
};

std::vector<NodeChoices> node_choices(const UndirectedGraph& g, ProcessKind kind, const PairIndex& idx) {
    std::vector<NodeChoices> out(g.node_count());
    for (NodeId u = 0; u < g.node_count(); ++u) {
        auto& c = out[u];
        const auto nu = g.neighbors(u);
        if (kind == ProcessKind::Triangulation) {
            for (NodeId v : nu)
                for (NodeId w : nu) c.counts[v != w && !g.has_edge(v, w) ? idx.mask(v, w) : 0] += 1;
            c.total = nu.size() * nu.size();
        } else {
            // Weight each walk u -> v -> w by the product of the other
            // first-hop choices' degrees so all walks share one denominator.
            std::uint64_t den = 1;
            for (NodeId v : nu) den = std::lcm(den, static_cast<std::uint64_t>(g.degree(v)));
            for (NodeId v : nu)
                for (NodeId w : g.neighbors(v))
                    c.counts[w != u && !g.has_edge(u, w) ? idx.mask(u, w) : 0] += den / g.degree(v);
            c.total = den * nu.size();
        }
    }
    return out;
}

std::vector<NodeChoices> node_choices(const DirectedGraph& g, ProcessKind, const PairIndex& idx) {
    std::vector<NodeChoices> out(g.node_count());
    for (NodeId u = 0; u < g.node_count(); ++u) {
        auto& c = out[u];
        const auto nu = g.successors(u);
        if (nu.empty()) {
            c.counts[0] = 1;
            c.total = 1;
            continue;
        }
        std::uint64_t den = 1;
        for (NodeId v : nu) den = std::lcm(den, std::max<std::uint64_t>(1, g.out_degree(v)));
        for (NodeId v : nu) {
            if (g.out_degree(v) == 0) {
                c.counts[0] += den;
                continue;
            }
            for (NodeId w : g.successors(v))
                c.counts[w != u && !g.has_edge(u, w) ? idx.mask(u, w) : 0] += den / g.out_degree(v);
        }
        c.total = den * nu.size();
    }
    return out;
}

template <class Graph>
double choice_space(const Graph& g, ProcessKind kind) {
    double size = 1.0;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        double count = 0.0;
        if constexpr (std::is_same_v<Graph, UndirectedGraph>) {
            if (kind == ProcessKind::Triangulation) {
                count = static_cast<double>(g.degree(u) * g.degree(u));
            } else {
                for (NodeId v : g.neighbors(u)) count += static_cast<double>(g.degree(v));
            }
        } else {
            for (NodeId v : g.successors(u)) count += static_cast<double>(std::max<std::size_t>(1, g.out_degree(v)));
        }
        size *= std::max(1.0, count);
    }
    return size;
}

template <class Graph>
void check_tractable(const Graph& g, ProcessKind kind) {
    check_kind(g, kind);
    if constexpr (std::is_same_v<Graph, UndirectedGraph>) check_isolated(g);
    const double size = choice_space(g, kind);
    if (size > kMaxChoiceSpace) {
        throw OracleRefusal("joint choice space " + std::to_string(static_cast<long double>(size)) +
                                " exceeds the enumeration limit",
                            size);
    }
}

template <class Scalar, class Graph>
RoundLaw<Scalar> round_law(const Graph& g, ProcessKind kind, const PairIndex& idx) {
    RoundLaw<Scalar> joint{{0, Scalar(1)}};
    for (const auto& node : node_choices(g, kind, idx)) {
        RoundLaw<Scalar> next;
        for (const auto& [a, pa] : joint) {
            for (const auto& [b, count] : node.counts) next[a | b] += pa * ratio<Scalar>(count, node.total);
        }
        joint.swap(next);
    }
    return joint;
}

template <class Scalar, class Graph>
RoundLaw<Scalar> checked_round_law(const Graph& g, ProcessKind kind) {
    check_tractable(g, kind);
    PairIndex idx(g.node_count(), std::is_same_v<Graph, DirectedGraph>);
    return round_law<Scalar>(g, kind, idx);
}

std::uint64_t target_mask(const UndirectedGraph& g, const PairIndex& idx) {
    (void)g;
    return idx.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << idx.size()) - 1;
}

std::uint64_t target_mask(const DirectedGraph& g, const PairIndex& idx) { return idx.mask_of(transitive_closure(g)); }

template <class Graph>
Graph graph_of(const PairIndex& idx, std::uint64_t mask) {
    if constexpr (std::is_same_v<Graph, UndirectedGraph>) {
        return idx.undirected(mask);
    } else {
        return idx.directed_graph(mask);
    }
}

template <class Scalar, class Graph>
Scalar absorption_time(const Graph& g, ProcessKind kind) {
    check_kind(g, kind);
    if constexpr (std::is_same_v<Graph, UndirectedGraph>) {
        if (!is_connected(g)) throw GraphError(GraphError::Code::Disconnected, "input graph is not connected");
    }
    PairIndex idx(g.node_count(), std::is_same_v<Graph, DirectedGraph>);
    const std::uint64_t base = idx.mask_of(g);
    const std::uint64_t target = target_mask(g, idx);
    const std::uint64_t missing = target & ~base;
    const auto missing_count = static_cast<std::size_t>(std::popcount(missing));
    if (missing_count > kMaxMissingEdges) {
        throw OracleRefusal("state space 2^" + std::to_string(missing_count) + " is too large",
                            std::ldexp(1.0, static_cast<int>(missing_count)));
    }
    if (missing == 0) return Scalar(0);

    // Transient states, supersets first (transitions never remove edges).
    std::vector<std::uint64_t> states;
    for (std::uint64_t sub = missing;; sub = (sub - 1) & missing) {
        if (sub != missing) states.push_back(base | sub);
        if (sub == 0) break;
    }
    std::stable_sort(states.begin(), states.end(), [](std::uint64_t a, std::uint64_t b) {
        int pa = std::popcount(a), pb = std::popcount(b);
        return pa != pb ? pa > pb : a < b;
    });
    for (std::uint64_t s : states) check_tractable(graph_of<Graph>(idx, s), kind);

    std::vector<RoundLaw<Scalar>> laws(states.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(states.size()); ++i)
        laws[i] = round_law<Scalar>(graph_of<Graph>(idx, states[i]), kind, idx);

    std::unordered_map<std::uint64_t, Scalar> expected;
    expected.emplace(target, Scalar(0));
    for (std::size_t i = 0; i < states.size(); ++i) {
        const auto& law = laws[i];
        Scalar stay(0);
        Scalar acc(1);
        for (const auto& [added, p] : law) {
            if (added == 0) {
                stay = p;
            } else {
                acc += p * expected.at(states[i] | added);
            }
        }
        if (stay == Scalar(1)) throw std::runtime_error("state cannot leave itself; absorption unreachable");
        expected.emplace(states[i], acc / (Scalar(1) - stay));
    }
    return expected.at(base);
}

std::string rational_string(const Rational& r) {
    std::ostringstream out;
    out << numerator(r) << '/' << denominator(r);
    return out.str();
}

}  // namespace

RoundLaw<Rational> single_round_distribution(const UndirectedGraph& g, ProcessKind kind) {
    return checked_round_law<Rational>(g, kind);
}
RoundLaw<Rational> single_round_distribution(const DirectedGraph& g, ProcessKind kind) {
    return checked_round_law<Rational>(g, kind);
}
RoundLaw<double> single_round_distribution_double(const UndirectedGraph& g, ProcessKind kind) {
    return checked_round_law<double>(g, kind);
}
RoundLaw<double> single_round_distribution_double(const DirectedGraph& g, ProcessKind kind) {
    return checked_round_law<double>(g, kind);
}

double choice_space_size(const UndirectedGraph& g, ProcessKind kind) { return choice_space(g, kind); }
double choice_space_size(const DirectedGraph& g, ProcessKind kind) { return choice_space(g, kind); }

Rational expected_rounds_exact(const UndirectedGraph& g, ProcessKind kind) {
    return absorption_time<Rational>(g, kind);
}
Rational expected_rounds_exact(const DirectedGraph& g, ProcessKind kind) {
    return absorption_time<Rational>(g, kind);
}

double expected_rounds(const UndirectedGraph& g, ProcessKind kind) {
    if (g.node_count() <= kExactNodeLimit) return to_double(absorption_time<Rational>(g, kind));
    return absorption_time<double>(g, kind);
}
double expected_rounds(const DirectedGraph& g, ProcessKind kind) {
    if (g.node_count() <= kExactNodeLimit) return to_double(absorption_time<Rational>(g, kind));
    return absorption_time<double>(g, kind);
}

std::uint64_t canonical_mask(std::size_t n, std::uint64_t mask) {
    PairIndex idx(n, false);
    auto edges = idx.edges(mask);
    std::vector<NodeId> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t best = mask;
    do {
        std::uint64_t m = 0;
        for (auto [u, v] : edges) m |= idx.mask(perm[u], perm[v]);
        best = std::min(best, m);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

std::vector<std::uint64_t> connected_graph_masks(std::size_t n) {
    if (n < 1 || n > 5) throw std::invalid_argument("connected_graph_masks: n must be in [1, 5]");
    PairIndex idx(n, false);
    std::vector<std::uint64_t> out;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << idx.size()); ++m)
        if (is_connected(idx.undirected(m))) out.push_back(m);
    return out;
}

std::vector<NonmonotonePair> nonmonotone_search(std::size_t max_n, ProcessKind kind) {
    if (max_n > 5) throw std::invalid_argument("nonmonotone_search: max_n must be <= 5");
    if (is_directed(kind)) throw std::invalid_argument("nonmonotone_search: undirected kinds only");

    std::vector<NonmonotonePair> out;
    for (std::size_t n = 2; n <= max_n; ++n) {
        PairIndex idx(n, false);
        const bool exact = n <= kExactNodeLimit;

        struct Value {
            Rational exact;
            double approx = 0.0;
        };
        std::map<std::uint64_t, Value> memo;  // by canonical mask
        auto value_of = [&](std::uint64_t mask) -> const Value& {
            std::uint64_t key = canonical_mask(n, mask);
            auto it = memo.find(key);
            if (it != memo.end()) return it->second;
            Value v;
            auto g = idx.undirected(key);
            if (exact) {
                v.exact = absorption_time<Rational>(g, kind);
                v.approx = to_double(v.exact);
            } else {
                v.approx = absorption_time<double>(g, kind);
            }
            return memo.emplace(key, v).first->second;
        };

        std::set<std::uint64_t> classes;
        for (std::uint64_t m : connected_graph_masks(n)) classes.insert(canonical_mask(n, m));

        std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
        for (std::uint64_t g_mask : classes) {
            const Value gv = value_of(g_mask);
            for (std::uint64_t h = (g_mask - 1) & g_mask;; h = (h - 1) & g_mask) {
                if (is_connected(idx.undirected(h))) {
                    const Value& hv = value_of(h);
                    const bool longer = exact ? gv.exact > hv.exact : gv.approx > hv.approx + 1e-9;
                    if (longer) {
                        // Representative of the pair up to relabeling.
                        auto g_edges = idx.edges(g_mask);
                        auto h_edges = idx.edges(h);
                        std::vector<NodeId> perm(n);
                        std::iota(perm.begin(), perm.end(), 0);
                        std::pair<std::uint64_t, std::uint64_t> key{g_mask, h};
                        do {
                            std::uint64_t pg = 0, ph = 0;
                            for (auto [u, v] : g_edges) pg |= idx.mask(perm[u], perm[v]);
                            for (auto [u, v] : h_edges) ph |= idx.mask(perm[u], perm[v]);
                            key = std::min(key, std::pair{pg, ph});
                        } while (std::next_permutation(perm.begin(), perm.end()));
                        if (seen.insert(key).second) {
                            NonmonotonePair pair;
                            pair.n = n;
                            pair.g_edges = idx.edges(key.first);
                            pair.h_edges = idx.edges(key.second);
                            pair.g_rounds = gv.approx;
                            pair.h_rounds = hv.approx;
                            if (exact) {
                                pair.g_exact = rational_string(gv.exact);
                                pair.h_exact = rational_string(hv.exact);
                            }
                            out.push_back(std::move(pair));
                        }
                    }
                }
                if (h == 0) break;
            }
        }
    }
    return out;
}

namespace {

struct ChiSquare {
    double statistic = 0.0;
    std::size_t dof = 0;
    double p_value = 1.0;
};

ChiSquare chi_square_test(const RoundLaw<double>& law, const std::map<std::uint64_t, std::uint64_t>& observed,
                          std::uint64_t trials) {
    ChiSquare result;
    for (const auto& [mask, count] : observed) {
        if (!law.contains(mask) && count > 0) {
            result.statistic = std::numeric_limits<double>::infinity();
            result.p_value = 0.0;
            return result;
        }
    }
    std::vector<std::pair<double, double>> cells;  // (expected, observed)
    for (const auto& [mask, p] : law) {
        auto it = observed.find(mask);
        cells.emplace_back(p * static_cast<double>(trials), it == observed.end() ? 0.0 : static_cast<double>(it->second));
    }
    std::sort(cells.begin(), cells.end());
    std::vector<std::pair<double, double>> bins;
    std::pair<double, double> pooled{0.0, 0.0};
    for (const auto& c : cells) {
        if (pooled.first < 5.0) {
            pooled.first += c.first;
            pooled.second += c.second;
        } else {
            bins.push_back(c);
        }
    }
    bins.push_back(pooled);
    for (const auto& [e, o] : bins)
        if (e > 0.0) result.statistic += (o - e) * (o - e) / e;
    result.dof = bins.size() - 1;
    result.p_value = result.dof == 0 ? 1.0
                                     : boost::math::gamma_q(static_cast<double>(result.dof) / 2.0, result.statistic / 2.0);
    return result;
}

// Records the edge set added in round 0.
class FirstRound : public RoundObserver {
public:
    explicit FirstRound(const PairIndex& idx) : idx_(idx) {}
    void on_round(const RoundOutcome& o, const UndirectedGraph&) override { take(o); }
    void on_round(const RoundOutcome& o, const DirectedGraph&) override { take(o); }
    std::uint64_t mask = 0;

private:
    void take(const RoundOutcome& o) {
        if (o.round_index != 0) return;
        for (auto [u, v] : o.edges_added) mask |= idx_.mask(u, v);
    }
    const PairIndex& idx_;
};

template <class Graph>
EmpiricalReport compare(const Graph& g, ProcessKind kind, std::uint64_t trials, std::uint64_t seed) {
    if (trials == 0) throw std::invalid_argument("empirical_vs_exact: trials must be >= 1");
    EmpiricalReport report;
    report.graph = to_edge_list(AnyGraph{g});
    report.kind = kind;
    report.trials = trials;
    report.exact_rounds = expected_rounds(g, kind);
    const auto law = checked_round_law<double>(g, kind);

    PairIndex idx(g.node_count(), std::is_same_v<Graph, DirectedGraph>);
    std::map<std::uint64_t, std::uint64_t> observed;
    double sum = 0.0, sum_sq = 0.0;
    for (std::uint64_t i = 0; i < trials; ++i) {
        Graph copy = g;
        FirstRound first(idx);
        ProcessConfig config{kind, trial_seed(seed, i)};
        auto run = run_to_convergence(copy, config, &first);
        const auto r = static_cast<double>(run.rounds);
        sum += r;
        sum_sq += r * r;
        ++observed[first.mask];
    }
    const auto t = static_cast<double>(trials);
    report.mean_rounds = sum / t;
    const double var = trials > 1 ? std::max(0.0, (sum_sq - t * report.mean_rounds * report.mean_rounds) / (t - 1.0)) : 0.0;
    const double se = std::sqrt(var / t);
    const double diff = report.mean_rounds - report.exact_rounds;
    if (se > 0.0) {
        report.z = diff / se;
    } else {
        report.z = std::abs(diff) < 1e-12 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), diff);
    }

    auto chi = chi_square_test(law, observed, trials);
    report.chi_square = chi.statistic;
    report.degrees_of_freedom = chi.dof;
    report.p_value = chi.p_value;
    return report;
}

}  // namespace

EmpiricalReport empirical_vs_exact(const AnyGraph& g, ProcessKind kind, std::uint64_t trials, std::uint64_t seed) {
    return std::visit([&](const auto& graph) { return compare(graph, kind, trials, seed); }, g);
}

std::string EmpiricalReport::to_json() const {
    nlohmann::ordered_json j;
    j["graph"] = graph;
    j["kind"] = std::string(to_string(kind));
    j["trials"] = trials;
    j["mean_rounds"] = mean_rounds;
    j["exact_rounds"] = exact_rounds;
    j["z"] = z;
    j["chi_square"] = chi_square;
    j["p_value"] = p_value;
    return j.dump();
}

}  // namespace gossip::oracle
