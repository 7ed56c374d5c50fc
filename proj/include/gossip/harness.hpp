#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "gossip/generators.hpp"
#include "gossip/parallel.hpp"
#include "gossip/process.hpp"

namespace gossip {

struct ExperimentSpec {
    FamilySpec family;
    std::vector<std::size_t> sizes;
    ProcessKind kind = ProcessKind::Triangulation;
    std::uint64_t trials = 1;
    std::uint64_t master_seed = 0;
    std::uint64_t max_rounds = kDefaultMaxRounds;

    /// Throws std::invalid_argument (empty sizes, zero trials, family/process
    /// direction mismatch) or ConstraintError (family size constraints).
    void validate() const;
};

struct TrialRow {
    std::string family;
    std::size_t n = 0;
    ProcessKind kind = ProcessKind::Triangulation;
    std::uint64_t trial = 0;
    std::uint64_t seed = 0;
    std::uint64_t rounds = 0;
    bool capped = false;

    friend bool operator==(const TrialRow&, const TrialRow&) = default;
};

struct SizeAggregate {
    std::size_t n = 0;
    std::uint64_t trials = 0;
    double mean = 0.0;
    double median = 0.0;
    double p05 = 0.0;
    double p95 = 0.0;
    double median_per_n_ln_n = 0.0;
    double median_per_n_ln2_n = 0.0;
    double median_per_n2 = 0.0;
    std::uint64_t capped = 0;

    friend bool operator==(const SizeAggregate&, const SizeAggregate&) = default;
};

struct ExperimentResult {
    std::vector<TrialRow> rows;             // ordered by (n, trial)
    std::vector<SizeAggregate> aggregates;  // ordered by n
    bool any_capped() const;
};

/// Process seed of trial `trial` at size n.
std::uint64_t sweep_trial_seed(std::uint64_t master_seed, std::size_t n, std::uint64_t trial);

/// One trial: build the family graph at size n and run the process.
TrialRow run_trial(const ExperimentSpec& spec, std::size_t n, std::uint64_t trial);

/// Reference implementation: trials in order on the calling thread.
ExperimentResult run_sweep_serial(const ExperimentSpec& spec);

/// Trials spread over `jobs` OpenMP threads; identical output to the serial run.
ExperimentResult run_sweep(const ExperimentSpec& spec, unsigned jobs);

/// Linear-interpolated quantile of sorted data, q in [0, 1].
double quantile_sorted(const std::vector<double>& sorted, double q);

/// Per-size statistics recomputed from rows.
std::vector<SizeAggregate> aggregate(const std::vector<TrialRow>& rows);

// CSV: family,n,process,trial,seed,rounds,capped
void write_rows_csv(std::ostream& out, const std::vector<TrialRow>& rows);
std::vector<TrialRow> read_rows_csv(std::istream& in);  // throws std::runtime_error when malformed
void write_aggregates_csv(std::ostream& out, const std::vector<SizeAggregate>& aggregates);

enum class Trend { Constant, StrictlyIncreasing, StrictlyDecreasing, Nondecreasing, Nonincreasing, Mixed };
std::string_view to_string(Trend trend) noexcept;

/// Classifies a sequence; values within rel_tol of each other count as ties.
Trend classify_trend(const std::vector<double>& values, double rel_tol = 1e-12);

struct ScalingGroup {
    std::string family;
    ProcessKind kind = ProcessKind::Triangulation;
    std::vector<SizeAggregate> sizes;
    Trend per_n_ln_n = Trend::Mixed;
    Trend per_n_ln2_n = Trend::Mixed;
    Trend per_n2 = Trend::Mixed;
    double spread_n_ln_n = 0.0;  // max ratio / min ratio
    double spread_n_ln2_n = 0.0;
    double spread_n2 = 0.0;
};

/// Groups rows by (family, process) and classifies the three normalized
/// median columns.
std::vector<ScalingGroup> analyze_scaling(const std::vector<TrialRow>& rows);
std::string scaling_to_json(const std::vector<ScalingGroup>& groups);

}  // namespace gossip
