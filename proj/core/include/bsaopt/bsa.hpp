#pragma once

// Backtracking search optimisation: a dual-population optimizer whose
// mutation direction is the difference between the current population and a
// stochastically retained, shuffled historical population.

#include "bsaopt/core.hpp"
#include "bsaopt/run.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace bsaopt {

enum class CrossoverMode {
    /// Per row, a fair coin picks a mix-rate-capped random column subset or
    /// one random column.
    DualStrategy,
    /// Always the mix-rate-capped random subset.
    MixrateOnly,
};

std::string to_string(CrossoverMode mode);

struct BsaConfig {
    std::size_t pop_size = 30;
    std::size_t max_iterations = 2000;
    AmplitudeStrategy amplitude = AmplitudeStrategy::scaled_normal(3.0);
    double mix_rate = 1.0;
    std::optional<Target> target;
    CrossoverMode crossover_mode = CrossoverMode::DualStrategy;
    BoundaryMode boundary = BoundaryMode::Regenerate;
    bool record_trace = false;

    void validate() const;
};

/// The two populations BSA carries between generations.
struct BsaState {
    Population current;
    Population historical;
    std::size_t iteration = 0;
};

/// N x D partition of trial cells into "from current" and "from mutant".
class CrossoverMap {
  public:
    CrossoverMap() = default;
    CrossoverMap(std::size_t rows, std::size_t cols, bool from_mutant = false);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool takes_mutant(std::size_t i, std::size_t j) const { return cells_[i * cols_ + j] != 0; }
    void set_takes_mutant(std::size_t i, std::size_t j, bool v) {
        cells_[i * cols_ + j] = v ? 1 : 0;
    }
    std::size_t mutant_count(std::size_t i) const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<unsigned char> cells_;
};

/// Draws a, b ~ U(0,1); if a < b the historical population becomes a copy of
/// the current one. The historical rows are then shuffled.
void selection_one(BsaState& state, RandomSource& rng);

/// Mutant = P + F * (oldP - P), elementwise; fitness unset.
Population mutate(const Population& current, const Population& historical, double amplitude);

/// `iteration` counts from 1; linear-schedule reaches f_max at max_iterations.
double draw_amplitude(const AmplitudeStrategy& strategy, std::size_t iteration,
                      std::size_t max_iterations, RandomSource& rng);

/// Mix-rate branch marks max(1, ceil(mix_rate * u * d)) distinct random
/// columns per row (u ~ U(0,1)); the single-column branch marks one.
CrossoverMap make_crossover_map(std::size_t n, std::size_t d, double mix_rate,
                                CrossoverMode mode, RandomSource& rng);

/// Trial cell = mutant where the map says so, current otherwise.
Population crossover(const Population& current, const Population& mutant,
                     const CrossoverMap& map);

/// Greedy per-slot replacement: trial_i wins only on strictly lower fitness.
/// Throws ContractViolation if either population has unevaluated members.
Population selection_two(const Population& current, const Population& trial);

/// Initial P and oldP (independent uniform draws, in that order) with P
/// evaluated through the tracker.
BsaState bsa_initialize(RunTracker& tracker, const SearchSpace& space, const BsaConfig& cfg,
                        RandomSource& rng);

/// One full generation: selection-I, amplitude, mutation, repair, crossover,
/// repair, evaluation, selection-II. Returns the amplitude used.
double bsa_generation(BsaState& state, RunTracker& tracker, const SearchSpace& space,
                      const BsaConfig& cfg, RandomSource& rng);

RunResult bsa_minimize(const Objective& f, const SearchSpace& space, const BsaConfig& cfg,
                       RandomSource& rng);

}  // namespace bsaopt
