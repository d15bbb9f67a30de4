#pragma once

// Bookkeeping shared by every optimizer: evaluation counting, running best,
// first-hit detection for a target value, wall-clock timing and the trace.

#include "bsaopt/core.hpp"

#include <chrono>
#include <cstddef>
#include <optional>
#include <vector>

namespace bsaopt {

/// Stop/record pair: the run hits the target once |best - value| <= epsilon.
struct Target {
    double value = 0.0;
    double epsilon = 1e-6;
    /// When false the hit is recorded but the run continues to its budget.
    bool stop = true;

    bool reached(double best) const noexcept;
};

struct TraceRow {
    std::size_t iteration = 0;
    double best_fitness = 0.0;
    /// Amplitude used in this iteration; NaN for optimizers without one.
    double amplitude = 0.0;
};

/// Outcome of one optimizer run.
struct RunResult {
    std::vector<double> best_coords;
    double best_value = 0.0;
    std::size_t evaluations = 0;
    std::size_t iterations = 0;
    std::size_t non_finite = 0;
    std::size_t scouts = 0;  // ABC only
    std::optional<std::size_t> target_iteration;
    std::optional<std::size_t> evals_to_target;
    std::optional<double> time_to_target_s;
    double wall_time_s = 0.0;
    std::vector<TraceRow> trace;

    bool reached_target() const noexcept { return evals_to_target.has_value(); }
};

/// Owns the evaluation path of one run. Every objective call goes through
/// evaluate(), so the evaluation count always equals the objective's own
/// call count.
class RunTracker {
  public:
    RunTracker(Objective f, std::optional<Target> target, bool record_trace);

    /// Evaluates dirty rows and folds them into the running best.
    EvaluationStats evaluate(Population& pop);

    /// True once the target is hit and it is configured to stop the run.
    bool should_stop() const noexcept;

    void set_iteration(std::size_t it) noexcept { iteration_ = it; }
    void record_trace(double amplitude);

    const std::vector<double>& best_coords() const noexcept { return best_coords_; }
    double best_value() const noexcept { return best_value_; }
    std::size_t evaluations() const noexcept { return evaluations_; }

    RunResult finish(std::size_t iterations);

  private:
    void observe(std::span<const double> coords, double value);

    Objective f_;
    std::optional<Target> target_;
    bool trace_on_;
    std::chrono::steady_clock::time_point start_;
    std::size_t iteration_ = 0;
    std::size_t evaluations_ = 0;
    std::size_t non_finite_ = 0;
    std::vector<double> best_coords_;
    double best_value_;
    std::optional<std::size_t> hit_iteration_;
    std::optional<std::size_t> hit_evals_;
    std::optional<double> hit_time_;
    std::vector<TraceRow> trace_;
};

}  // namespace bsaopt
