#pragma once

// Experiment orchestration: dimension sweep (default boxes, D in {10,30,60}),
// range sweep (D = 2, symmetric override boxes), success ratios and the
// seed-aligned BSA-vs-competitor paired comparison.

#include "bsaopt/bsa.hpp"
#include "bsaopt/competitors.hpp"
#include "bsaopt/functions.hpp"
#include "bsaopt/records.hpp"

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace bsaopt {

struct BsaParams {
    AmplitudeStrategy amplitude = AmplitudeStrategy::scaled_normal(3.0);
    double mix_rate = 1.0;
    CrossoverMode crossover_mode = CrossoverMode::DualStrategy;
};

struct ExperimentSpec {
    std::vector<Algorithm> algorithms{std::begin(kAllAlgorithms), std::end(kAllAlgorithms)};
    std::vector<int> functions{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16};
    std::vector<SweepMode> modes{SweepMode::Dimension, SweepMode::Range};
    std::vector<std::size_t> dims{10, 30, 60};
    std::vector<std::pair<double, double>> ranges{{-5.0, 5.0}, {-250.0, 250.0}, {-500.0, 500.0}};
    std::size_t runs = 30;
    std::size_t iterations = 2000;
    std::size_t pop_size = 30;
    double success_epsilon = 1e-6;
    Metric metric = Metric::FinalBest;
    /// Unreached targets count as the full budget for evals/time metrics.
    bool censor = false;
    std::uint64_t master_seed = 0;
    std::size_t parallelism = 1;
    /// End a run at its first target hit instead of spending the budget.
    bool stop_at_target = false;
    /// Record wall-clock times (makes records.csv non-reproducible).
    bool record_timing = false;
    BoundaryMode boundary = BoundaryMode::Regenerate;
    BsaParams bsa;
    DeParams de;
    PsoParams pso;
    AbcParams abc;
    FfParams ff;

    void validate() const;
    /// Everything that affects results; excludes parallelism.
    std::string canonical_json() const;
    /// 16 hex digits of FNV-1a over canonical_json().
    std::string hash() const;
};

/// One scheduled run.
struct RunJob {
    SweepMode mode = SweepMode::Dimension;
    std::size_t config_index = 0;
    std::string config;
    int function_id = 0;
    Algorithm algorithm = Algorithm::BSA;
    std::size_t seed_index = 0;
    std::size_t dims = 2;
    SearchSpace space;
    bool domain_override = false;
};

/// Injective packing of (algorithm, mode, function, config, seed) into the
/// stream id handed to RandomSource together with the master seed.
std::uint64_t stream_id(const RunJob& job);

/// Config label: "D<dims>" for the dimension sweep, "R<k>" (1-based) for
/// the range sweep.
std::string config_label(SweepMode mode, const ExperimentSpec& spec, std::size_t index);

/// Jobs ordered by (algorithm, function, config, seed).
std::vector<RunJob> plan_jobs(const ExperimentSpec& spec, SweepMode mode);

RunRecord execute_job(const ExperimentSpec& spec, const RunJob& job);

struct SweepOptions {
    /// Records from an earlier run of the same spec; matching jobs are
    /// taken from here instead of being executed.
    const std::vector<RunRecord>* resume = nullptr;
    /// Called (serialised) for each freshly executed record.
    std::function<void(const RunRecord&)> on_record;
    /// Checked before each job; when set, remaining jobs are skipped.
    const std::atomic<bool>* cancel = nullptr;
};

/// Executes jobs on spec.parallelism workers. The result is in job order
/// and independent of the worker count. Skipped (cancelled) jobs are absent.
std::vector<RunRecord> run_jobs(const ExperimentSpec& spec, const std::vector<RunJob>& jobs,
                                const SweepOptions& options = {});

std::vector<RunRecord> run_dimension_sweep(const ExperimentSpec& spec,
                                           const SweepOptions& options = {});
std::vector<RunRecord> run_range_sweep(const ExperimentSpec& spec,
                                       const SweepOptions& options = {});

/// Fraction of successful (function, run) cells per algorithm x
/// configuration, plus the per-function breakdown.
SuccessRatioTable success_ratio(const std::vector<RunRecord>& records);

struct PairwiseOptions {
    double alpha = 0.05;
    Metric metric = Metric::FinalBest;
    bool censor = false;
};

struct PairwiseReport {
    std::vector<ComparisonTable> tables;  // one per (mode, config)
    std::vector<std::string> warnings;
};

/// A problem enters a table only if every algorithm solved it at least once
/// and the metric is defined for all of its runs. Runs are paired by seed
/// index; the test is applied to (competitor - BSA), so "+" means BSA lower.
PairwiseReport pairwise_bsa_comparison(const std::vector<RunRecord>& records,
                                       const PairwiseOptions& options = {});

}  // namespace bsaopt
