#pragma once

// Reference competitors run under the same population, box and random-stream
// contracts as BSA: DE/rand/1/bin, constricted global-best PSO, canonical
// artificial bee colony, and the firefly algorithm.

#include "bsaopt/core.hpp"
#include "bsaopt/run.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bsaopt {

enum class Algorithm { BSA, DE, PSO, ABC, FF };

inline constexpr Algorithm kAllAlgorithms[] = {Algorithm::BSA, Algorithm::DE, Algorithm::PSO,
                                               Algorithm::ABC, Algorithm::FF};

std::string to_string(Algorithm a);
/// Case-insensitive; throws ConfigError on unknown names.
Algorithm parse_algorithm(const std::string& name);

struct DeParams {
    double f_weight = 0.5;
    double crossover_rate = 0.9;
};

struct PsoParams {
    double inertia = 0.729;
    double cognitive = 1.49445;
    double social = 1.49445;
    double velocity_clamp_fraction = 0.5;
};

struct AbcParams {
    /// Unset means pop_size * D. May be +infinity (no scouts).
    std::optional<double> trial_limit;
};

struct FfParams {
    double beta0 = 1.0;
    double gamma = 1.0;
    double alpha = 0.2;
    double alpha_decay = 0.97;
};

struct CompetitorConfig {
    Algorithm algorithm = Algorithm::DE;
    std::size_t pop_size = 30;
    std::size_t max_iterations = 2000;
    std::optional<Target> target;
    DeParams de;
    PsoParams pso;
    AbcParams abc;
    FfParams ff;
    BoundaryMode boundary = BoundaryMode::Regenerate;
    bool record_trace = false;

    void validate() const;
};

/// Worst-case objective calls per iteration (ABC adds at most one scout).
std::size_t max_evaluations_per_iteration(Algorithm a, std::size_t pop_size);

RunResult de_minimize(const Objective& f, const SearchSpace& space, const CompetitorConfig& cfg,
                      RandomSource& rng);
RunResult pso_minimize(const Objective& f, const SearchSpace& space, const CompetitorConfig& cfg,
                       RandomSource& rng);
RunResult abc_minimize(const Objective& f, const SearchSpace& space, const CompetitorConfig& cfg,
                       RandomSource& rng);
RunResult ff_minimize(const Objective& f, const SearchSpace& space, const CompetitorConfig& cfg,
                      RandomSource& rng);

/// Dispatches on cfg.algorithm (BSA is not a competitor and is rejected).
RunResult competitor_minimize(const Objective& f, const SearchSpace& space,
                              const CompetitorConfig& cfg, RandomSource& rng);

/// ABC neighbour move: copy of `source` with coordinate j shifted by
/// phi * (source[j] - partner[j]).
std::vector<double> abc_neighbor(std::span<const double> source, std::span<const double> partner,
                                 std::size_t j, double phi);

/// Firefly attractiveness beta0 * exp(-gamma * r2); beta0 at r2 == 0.
double firefly_attraction(double beta0, double gamma, double r2);

}  // namespace bsaopt
