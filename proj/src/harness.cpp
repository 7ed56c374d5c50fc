#include "gossip/harness.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "gossip/rng.hpp"

namespace gossip {

void ExperimentSpec::validate() const {
    if (sizes.empty()) throw std::invalid_argument("sweep needs at least one size");
    if (trials == 0) throw std::invalid_argument("sweep needs trials >= 1");
    if (max_rounds == 0) throw std::invalid_argument("max_rounds must be >= 1");
    if (is_directed(family.family) != is_directed(kind)) {
        throw std::invalid_argument("family " + std::string(to_string(family.family)) + " does not match process " +
                                    std::string(to_string(kind)));
    }
    for (std::size_t n : sizes) (void)generate(family, n, 0);
}

bool ExperimentResult::any_capped() const {
    return std::any_of(rows.begin(), rows.end(), [](const TrialRow& r) { return r.capped; });
}

std::uint64_t sweep_trial_seed(std::uint64_t master_seed, std::size_t n, std::uint64_t trial) {
    return trial_seed(trial_seed(master_seed, n), trial);
}

TrialRow run_trial(const ExperimentSpec& spec, std::size_t n, std::uint64_t trial) {
    TrialRow row;
    row.family = std::string(to_string(spec.family.family));
    row.n = n;
    row.kind = spec.kind;
    row.trial = trial;
    row.seed = sweep_trial_seed(spec.master_seed, n, trial);

    AnyGraph graph = generate(spec.family, n, mix64(row.seed));
    ProcessConfig config{spec.kind, row.seed, spec.max_rounds};
    RunResult result = std::visit([&](auto& g) { return run_to_convergence(g, config); }, graph);
    row.rounds = result.rounds;
    row.capped = result.capped;
    return row;
}

namespace {

template <class Runner>
ExperimentResult sweep_with(const ExperimentSpec& spec, Runner&& runner) {
    spec.validate();
    std::vector<std::size_t> sizes = spec.sizes;
    std::sort(sizes.begin(), sizes.end());
    sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());

    const std::uint64_t total = sizes.size() * spec.trials;
    ExperimentResult result;
    result.rows = runner(total, [&](std::uint64_t k) {
        return run_trial(spec, sizes[k / spec.trials], k % spec.trials);
    });
    result.aggregates = aggregate(result.rows);
    return result;
}

}  // namespace

ExperimentResult run_sweep_serial(const ExperimentSpec& spec) {
    return sweep_with(spec, [](std::uint64_t count, auto&& fn) { return serial_trials(count, fn); });
}

ExperimentResult run_sweep(const ExperimentSpec& spec, unsigned jobs) {
    return sweep_with(spec, [jobs](std::uint64_t count, auto&& fn) { return parallel_trials(count, jobs, fn); });
}

double quantile_sorted(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) return std::nan("");
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

std::vector<SizeAggregate> aggregate(const std::vector<TrialRow>& rows) {
    std::map<std::size_t, std::vector<const TrialRow*>> by_n;
    for (const auto& r : rows) by_n[r.n].push_back(&r);

    std::vector<SizeAggregate> out;
    for (const auto& [n, group] : by_n) {
        SizeAggregate a;
        a.n = n;
        a.trials = group.size();
        std::vector<double> rounds;
        rounds.reserve(group.size());
        for (const TrialRow* r : group) {
            rounds.push_back(static_cast<double>(r->rounds));
            if (r->capped) ++a.capped;
        }
        std::sort(rounds.begin(), rounds.end());
        double sum = 0.0;
        for (double x : rounds) sum += x;
        a.mean = sum / static_cast<double>(rounds.size());
        a.median = quantile_sorted(rounds, 0.5);
        a.p05 = quantile_sorted(rounds, 0.05);
        a.p95 = quantile_sorted(rounds, 0.95);
        const double nn = static_cast<double>(n);
        const double ln = std::log(nn);
        a.median_per_n_ln_n = a.median / (nn * ln);
        a.median_per_n_ln2_n = a.median / (nn * ln * ln);
        a.median_per_n2 = a.median / (nn * nn);
        out.push_back(a);
    }
    return out;
}

void write_rows_csv(std::ostream& out, const std::vector<TrialRow>& rows) {
    out << "family,n,process,trial,seed,rounds,capped\n";
    for (const auto& r : rows) {
        out << r.family << ',' << r.n << ',' << to_string(r.kind) << ',' << r.trial << ',' << r.seed << ','
            << r.rounds << ',' << (r.capped ? 1 : 0) << '\n';
    }
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, sep)) fields.push_back(field);
    if (!line.empty() && line.back() == sep) fields.emplace_back();
    return fields;
}

std::uint64_t parse_u64(const std::string& s, std::size_t line_no) {
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
        v = std::stoull(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size() || s.front() == '-') {
        throw std::runtime_error("csv line " + std::to_string(line_no) + ": bad integer `" + s + "`");
    }
    return v;
}

}  // namespace

std::vector<TrialRow> read_rows_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw std::runtime_error("csv: empty input");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "family,n,process,trial,seed,rounds,capped") throw std::runtime_error("csv: unexpected header");

    std::vector<TrialRow> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto f = split(line, ',');
        if (f.size() != 7) throw std::runtime_error("csv line " + std::to_string(line_no) + ": expected 7 fields");
        TrialRow r;
        r.family = f[0];
        r.n = parse_u64(f[1], line_no);
        auto kind = parse_process_kind(f[2]);
        if (!kind) throw std::runtime_error("csv line " + std::to_string(line_no) + ": unknown process `" + f[2] + "`");
        r.kind = *kind;
        r.trial = parse_u64(f[3], line_no);
        r.seed = parse_u64(f[4], line_no);
        r.rounds = parse_u64(f[5], line_no);
        std::uint64_t capped = parse_u64(f[6], line_no);
        if (capped > 1) throw std::runtime_error("csv line " + std::to_string(line_no) + ": capped must be 0 or 1");
        r.capped = capped == 1;
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_aggregates_csv(std::ostream& out, const std::vector<SizeAggregate>& aggregates) {
    out << "n,trials,mean,median,p05,p95,median_per_n_ln_n,median_per_n_ln2_n,median_per_n2,capped\n";
    out.precision(17);
    for (const auto& a : aggregates) {
        out << a.n << ',' << a.trials << ',' << a.mean << ',' << a.median << ',' << a.p05 << ',' << a.p95 << ','
            << a.median_per_n_ln_n << ',' << a.median_per_n_ln2_n << ',' << a.median_per_n2 << ',' << a.capped << '\n';
    }
}

std::string_view to_string(Trend trend) noexcept {
    switch (trend) {
        case Trend::Constant: return "constant";
        case Trend::StrictlyIncreasing: return "strictly_increasing";
        case Trend::StrictlyDecreasing: return "strictly_decreasing";
        case Trend::Nondecreasing: return "nondecreasing";
        case Trend::Nonincreasing: return "nonincreasing";
        case Trend::Mixed: return "mixed";
    }
    return "?";
}

Trend classify_trend(const std::vector<double>& values, double rel_tol) {
    bool up = false, down = false, tie = false;
    for (std::size_t i = 1; i < values.size(); ++i) {
        const double a = values[i - 1], b = values[i];
        const double scale = std::max(std::abs(a), std::abs(b));
        if (std::abs(b - a) <= rel_tol * scale) {
            tie = true;
        } else if (b > a) {
            up = true;
        } else {
            down = true;
        }
    }
    if (up && down) return Trend::Mixed;
    if (up) return tie ? Trend::Nondecreasing : Trend::StrictlyIncreasing;
    if (down) return tie ? Trend::Nonincreasing : Trend::StrictlyDecreasing;
    return Trend::Constant;
}

std::vector<ScalingGroup> analyze_scaling(const std::vector<TrialRow>& rows) {
    std::map<std::pair<std::string, std::string>, std::vector<TrialRow>> groups;
    for (const auto& r : rows) groups[{r.family, std::string(to_string(r.kind))}].push_back(r);

    std::vector<ScalingGroup> out;
    for (auto& [key, group_rows] : groups) {
        ScalingGroup g;
        g.family = key.first;
        g.kind = group_rows.front().kind;
        g.sizes = aggregate(group_rows);
        std::vector<double> a, b, c;
        for (const auto& s : g.sizes) {
            a.push_back(s.median_per_n_ln_n);
            b.push_back(s.median_per_n_ln2_n);
            c.push_back(s.median_per_n2);
        }
        auto spread = [](const std::vector<double>& v) {
            auto [lo, hi] = std::minmax_element(v.begin(), v.end());
            return *lo > 0.0 ? *hi / *lo : std::numeric_limits<double>::infinity();
        };
        g.per_n_ln_n = classify_trend(a);
        g.per_n_ln2_n = classify_trend(b);
        g.per_n2 = classify_trend(c);
        g.spread_n_ln_n = spread(a);
        g.spread_n_ln2_n = spread(b);
        g.spread_n2 = spread(c);
        out.push_back(std::move(g));
    }
    return out;
}

std::string scaling_to_json(const std::vector<ScalingGroup>& groups) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& g : groups) {
        nlohmann::ordered_json j;
        j["family"] = g.family;
        j["process"] = std::string(to_string(g.kind));
        nlohmann::ordered_json sizes = nlohmann::ordered_json::array();
        for (const auto& s : g.sizes) {
            nlohmann::ordered_json row;
            row["n"] = s.n;
            row["trials"] = s.trials;
            row["median"] = s.median;
            row["median_per_n_ln_n"] = s.median_per_n_ln_n;
            row["median_per_n_ln2_n"] = s.median_per_n_ln2_n;
            row["median_per_n2"] = s.median_per_n2;
            sizes.push_back(row);
        }
        j["sizes"] = sizes;
        auto verdict = [](Trend t, double spread) {
            nlohmann::ordered_json v;
            v["trend"] = std::string(to_string(t));
            v["max_over_min"] = spread;
            return v;
        };
        j["median_per_n_ln_n"] = verdict(g.per_n_ln_n, g.spread_n_ln_n);
        j["median_per_n_ln2_n"] = verdict(g.per_n_ln2_n, g.spread_n_ln2_n);
        j["median_per_n2"] = verdict(g.per_n2, g.spread_n2);
        out.push_back(j);
    }
    return out.dump(2);
}

}  // namespace gossip
