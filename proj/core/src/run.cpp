#include "bsaopt/run.hpp"

#include <cmath>
#include <limits>

namespace bsaopt {

bool Target::reached(double best) const noexcept { return std::abs(best - value) <= epsilon; }

RunTracker::RunTracker(Objective f, std::optional<Target> target, bool record_trace)
    : f_(std::move(f)),
      target_(target),
      trace_on_(record_trace),
      start_(std::chrono::steady_clock::now()),
      best_value_(std::numeric_limits<double>::infinity()) {}

EvaluationStats RunTracker::evaluate(Population& pop) {
    const auto stats = bsaopt::evaluate(pop, f_, [&](std::size_t i, double value) {
        ++evaluations_;
        observe(pop.row(i), value);
    });
    non_finite_ += stats.non_finite;
    return stats;
}

void RunTracker::observe(std::span<const double> coords, double value) {
    if (value < best_value_ || best_coords_.empty()) {
        best_value_ = value;
        best_coords_.assign(coords.begin(), coords.end());
    }
    if (target_ && !hit_evals_ && target_->reached(best_value_)) {
        hit_evals_ = evaluations_;
        hit_iteration_ = iteration_;
        hit_time_ = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }
}

bool RunTracker::should_stop() const noexcept {
    return target_ && target_->stop && hit_evals_.has_value();
}

void RunTracker::record_trace(double amplitude) {
    if (trace_on_) trace_.push_back(TraceRow{iteration_, best_value_, amplitude});
}

RunResult RunTracker::finish(std::size_t iterations) {
    RunResult r;
    r.best_coords = best_coords_;
    r.best_value = best_value_;
    r.evaluations = evaluations_;
    r.iterations = iterations;
    r.non_finite = non_finite_;
    r.target_iteration = hit_iteration_;
    r.evals_to_target = hit_evals_;
    r.time_to_target_s = hit_time_;
    r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    r.trace = std::move(trace_);
    return r;
}

}  // namespace bsaopt
