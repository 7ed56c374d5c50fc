#include "gossip/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gossip {

TieClass tie_class(const UndirectedGraph& g, NodeId v, std::span<const NodeId> s, std::size_t delta0) {
    if (delta0 == 0) throw std::invalid_argument("tie_class: delta0 must be >= 1");
    // d >= delta0 / 2 over the reals, without rounding.
    return 2 * induced_degree(g, v, s) >= delta0 ? TieClass::Strong : TieClass::Weak;
}

std::size_t strong_tie_count(const UndirectedGraph& g, std::size_t delta0) {
    std::size_t count = 0;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        NodeSet two_hop = khop_neighborhood(g, u, 2);
        for (NodeId w : g.neighbors(u))
            if (tie_class(g, w, two_hop, delta0) == TieClass::Strong) ++count;
    }
    return count;
}

std::optional<std::size_t> smallest_untouched_cut(const DirectedGraph& g, std::size_t chain_start) {
    const std::size_t n = g.node_count();
    for (std::size_t x = std::max<std::size_t>(chain_start, 1); x < n; ++x) {
        // Left side is nodes [0, x), right side [x, n).
        if (!g.has_edge(static_cast<NodeId>(x - 1), static_cast<NodeId>(x))) continue;
        std::size_t crossing = 0;
        for (NodeId u = 0; u < x && crossing <= 1; ++u)
            for (NodeId v : g.successors(u))
                if (v >= x) ++crossing;
        if (crossing == 1) return x;
    }
    return std::nullopt;
}

CutTracker::CutTracker(const DirectedGraph& g, std::size_t chain_start)
    : n_(g.node_count()), chain_start_(std::max<std::size_t>(chain_start, 1)), next_(g.node_count() + 1) {
    for (std::size_t x = 0; x <= n_; ++x) next_[x] = x;
    next_[0] = 1;
    if (n_ > 0) next_[n_] = n_;
    for (std::size_t x = 1; x < n_; ++x)
        if (!g.has_edge(static_cast<NodeId>(x - 1), static_cast<NodeId>(x))) mark_range(x, x);
    for (auto [from, to] : g.edges()) add_edge(from, to);
}

std::size_t CutTracker::find(std::size_t x) const {
    std::size_t root = x;
    while (next_[root] != root) root = next_[root];
    while (next_[x] != root) {
        std::size_t up = next_[x];
        next_[x] = root;
        x = up;
    }
    return root;
}

void CutTracker::mark_range(std::size_t first, std::size_t last) {
    for (std::size_t x = find(first); x <= last && x < n_; x = find(x + 1)) next_[x] = x + 1;
}

void CutTracker::add_edge(NodeId from, NodeId to) {
    // Edge between labels from+1 and to+1 crosses cuts [from+1, to] when it
    // points forward; the chain edge itself touches nothing.
    if (to <= from + 1) return;
    mark_range(std::size_t{from} + 1, to);
}

std::optional<std::size_t> CutTracker::smallest_untouched() const {
    if (chain_start_ >= n_) return std::nullopt;
    std::size_t x = find(chain_start_);
    if (x >= n_) return std::nullopt;
    return x;
}

PhConstantCheck check_ph_constants(double alpha, double eps) {
    PhConstantCheck check;
    const double slack = 1.0 - alpha * eps;
    check.alpha_ok = slack > 0.0 && alpha >= 4.0 + 4.0 / slack;
    check.eps_ok = eps < 1.0 && (4.0 - 3.0 * eps + eps * eps) / std::pow(1.0 - eps, 3) <= 5.0;
    return check;
}

PhTable ph_recurrence(std::size_t n, std::size_t rounds, std::size_t max_h, double alpha, double eps) {
    if (n < 4) throw std::invalid_argument("ph_recurrence: n must be >= 4");
    if (max_h < 2) throw std::invalid_argument("ph_recurrence: H must be >= 2");

    PhTable table;
    table.n = n;
    table.max_h = max_h;
    table.rounds = rounds;
    table.alpha = alpha;
    table.eps = eps;
    table.q.assign(max_h + 1, std::vector<double>(rounds + 1, 0.0));

    // cur[h] for h in [0, n); chain edges span at most n-1 hops.
    std::vector<double> cur(n, 0.0), next(n, 0.0), prefix(n + 1, 0.0);
    cur[1] = 1.0;
    const double step = 4.0 / (static_cast<double>(n) * static_cast<double>(n));

    auto record = [&](std::size_t t) {
        for (std::size_t h = 2; h <= max_h && h < n; ++h) table.q[h][t] = cur[h];
    };
    record(0);

    for (std::size_t t = 0; t < rounds; ++t) {
        // prefix[j] = Σ_{k=2}^{j-1} cur[k]; only indices >= h+1 >= 3 are summed below.
        prefix[0] = prefix[1] = prefix[2] = 0.0;
        for (std::size_t j = 2; j < n; ++j) prefix[j + 1] = prefix[j] + cur[j];
        auto range_sum = [&](std::size_t lo, std::size_t hi) {  // Σ_{k=lo}^{hi} cur[k]
            return hi < lo ? 0.0 : prefix[hi + 1] - prefix[lo];
        };

        next = cur;
        for (std::size_t h = 2; h < n; ++h) {
            double middle = 0.0;
            for (std::size_t k = 1; k < h; ++k) middle += cur[k] * cur[h - k];
            double worst = 0.0;
            for (std::size_t i = 1; i + h <= n; ++i) {
                double before = range_sum(h + 1, h + i - 1);
                double after = range_sum(h + 1, n - i);
                worst = std::max(worst, before + after);
            }
            next[h] = std::min(1.0, cur[h] + step * (worst + middle));
        }
        cur.swap(next);
        record(t + 1);
    }
    return table;
}

bool ph_bound_check(const PhTable& table) {
    const double n2 = static_cast<double>(table.n) * static_cast<double>(table.n);
    const double horizon = std::floor(table.eps * n2);
    const std::size_t last = horizon <= 0.0 ? 0 : std::min<std::size_t>(table.rounds, static_cast<std::size_t>(horizon));
    for (std::size_t t = 1; t <= last; ++t) {
        const double base = table.alpha * static_cast<double>(t) / n2;
        for (std::size_t h = 2; h <= table.max_h && h < table.n; ++h) {
            if (table.q[h][t] > std::pow(base, static_cast<double>(h - 1))) return false;
        }
    }
    return true;
}

void TraceCollector::rebase(std::size_t min_degree, std::size_t n) {
    delta0_ = min_degree;
    epoch_target_ = std::min((13 * min_degree + 11) / 12, n == 0 ? 0 : n - 1);
}

void TraceCollector::on_start(const UndirectedGraph& g) {
    traces_.clear();
    rebase(g.min_degree(), g.node_count());
}

void TraceCollector::on_start(const DirectedGraph& g) {
    traces_.clear();
    closure_edges_ = transitive_closure(g).edge_count();
    if (options_.cut_start) {
        cuts_.emplace(g, *options_.cut_start);
        initial_cut_ = cuts_->smallest_untouched();
    }
}

void TraceCollector::on_round(const RoundOutcome& outcome, const UndirectedGraph& g) {
    RoundTrace trace;
    trace.round = outcome.round_index;
    trace.min_degree = g.min_degree();
    trace.missing_edges = g.missing_count();
    trace.edges_added = outcome.new_edge_count;
    if (options_.strong_ties) {
        if (epoch_target_ > delta0_ && trace.min_degree >= epoch_target_) rebase(trace.min_degree, g.node_count());
        trace.tie_baseline = delta0_;
        trace.strong_tie_count = delta0_ == 0 ? 0 : strong_tie_count(g, delta0_);
    }
    traces_.push_back(trace);
}

void TraceCollector::on_round(const RoundOutcome& outcome, const DirectedGraph& g) {
    RoundTrace trace;
    trace.round = outcome.round_index;
    trace.min_degree = g.min_out_degree();
    trace.missing_edges = closure_edges_ - g.edge_count();
    trace.edges_added = outcome.new_edge_count;
    if (cuts_) {
        for (auto [from, to] : outcome.edges_added) cuts_->add_edge(from, to);
        trace.smallest_untouched_cut = cuts_->smallest_untouched();
    }
    traces_.push_back(trace);
}

std::string traces_to_csv(std::span<const RoundTrace> traces) {
    std::ostringstream out;
    out << "round,min_degree,missing_edges,edges_added,smallest_untouched_cut,strong_tie_count\n";
    for (const auto& t : traces) {
        out << t.round << ',' << t.min_degree << ',' << t.missing_edges << ',' << t.edges_added << ',';
        if (t.smallest_untouched_cut) out << *t.smallest_untouched_cut;
        out << ',';
        if (t.strong_tie_count) out << *t.strong_tie_count;
        out << '\n';
    }
    return out.str();
}

}  // namespace gossip
