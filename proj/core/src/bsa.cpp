#include "bsaopt/bsa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace bsaopt {

std::string to_string(CrossoverMode mode) {
    return mode == CrossoverMode::DualStrategy ? "dual-strategy" : "mixrate-only";
}

void BsaConfig::validate() const {
    if (pop_size < 1) throw ConfigError("bsa pop_size must be at least 1");
    if (!(mix_rate > 0.0 && mix_rate <= 1.0)) throw ConfigError("bsa mix_rate must lie in (0, 1]");
    amplitude.validate();
    if (target && !(target->epsilon >= 0.0)) throw ConfigError("target epsilon must be >= 0");
}

CrossoverMap::CrossoverMap(std::size_t rows, std::size_t cols, bool from_mutant)
    : rows_(rows), cols_(cols), cells_(rows * cols, from_mutant ? 1 : 0) {}

std::size_t CrossoverMap::mutant_count(std::size_t i) const {
    const auto first = cells_.begin() + static_cast<std::ptrdiff_t>(i * cols_);
    return static_cast<std::size_t>(
        std::count(first, first + static_cast<std::ptrdiff_t>(cols_), 1));
}

void selection_one(BsaState& state, RandomSource& rng) {
    const double a = rng.uniform();
    const double b = rng.uniform();
    if (a < b) state.historical = state.current;

    std::vector<std::size_t> order(state.historical.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.shuffle(std::span<std::size_t>(order));

    Population permuted(state.historical.size(), state.historical.dims());
    for (std::size_t i = 0; i < order.size(); ++i) {
        permuted.copy_row_from(i, state.historical, order[i]);
    }
    permuted.generation = state.historical.generation;
    state.historical = std::move(permuted);
}

Population mutate(const Population& current, const Population& historical, double amplitude) {
    if (current.size() != historical.size() || current.dims() != historical.dims()) {
        throw ContractViolation("mutate: current and historical shapes differ");
    }
    Population mutant(current.size(), current.dims());
    for (std::size_t i = 0; i < current.size(); ++i) {
        for (std::size_t j = 0; j < current.dims(); ++j) {
            const double p = current.at(i, j);
            mutant.at(i, j) = p + amplitude * (historical.at(i, j) - p);
        }
    }
    mutant.generation = current.generation;
    return mutant;
}

double draw_amplitude(const AmplitudeStrategy& strategy, std::size_t iteration,
                      std::size_t max_iterations, RandomSource& rng) {
    switch (strategy.kind) {
    case AmplitudeStrategy::Kind::ScaledNormal:
        return strategy.scale * rng.normal();
    case AmplitudeStrategy::Kind::Constant:
        return strategy.value;
    case AmplitudeStrategy::Kind::LinearSchedule: {
        const double frac = max_iterations == 0
                                ? 1.0
                                : static_cast<double>(iteration) / static_cast<double>(max_iterations);
        return strategy.f_min + (strategy.f_max - strategy.f_min) * frac;
    }
    }
    return 0.0;
}

CrossoverMap make_crossover_map(std::size_t n, std::size_t d, double mix_rate,
                                CrossoverMode mode, RandomSource& rng) {
    if (n < 1 || d < 1) throw ContractViolation("crossover map needs n, d >= 1");
    CrossoverMap map(n, d);
    std::vector<std::size_t> cols(d);
    for (std::size_t i = 0; i < n; ++i) {
        const bool subset = mode == CrossoverMode::MixrateOnly || rng.uniform() < 0.5;
        if (subset) {
            const double u = rng.uniform();
            const auto k = std::clamp<std::size_t>(
                static_cast<std::size_t>(std::ceil(mix_rate * u * static_cast<double>(d))), 1, d);
            std::iota(cols.begin(), cols.end(), std::size_t{0});
            rng.shuffle(std::span<std::size_t>(cols));
            for (std::size_t c = 0; c < k; ++c) map.set_takes_mutant(i, cols[c], true);
        } else {
            map.set_takes_mutant(i, rng.uniform_index(d), true);
        }
    }
    return map;
}

Population crossover(const Population& current, const Population& mutant,
                     const CrossoverMap& map) {
    if (current.size() != mutant.size() || current.dims() != mutant.dims() ||
        map.rows() != current.size() || map.cols() != current.dims()) {
        throw ContractViolation("crossover: population and map shapes differ");
    }
    Population trial(current.size(), current.dims());
    for (std::size_t i = 0; i < current.size(); ++i) {
        for (std::size_t j = 0; j < current.dims(); ++j) {
            trial.at(i, j) = map.takes_mutant(i, j) ? mutant.at(i, j) : current.at(i, j);
        }
    }
    trial.generation = current.generation;
    return trial;
}

Population selection_two(const Population& current, const Population& trial) {
    if (current.size() != trial.size() || current.dims() != trial.dims()) {
        throw ContractViolation("selection_two: population shapes differ");
    }
    if (!current.all_evaluated() || !trial.all_evaluated()) {
        throw ContractViolation("selection_two: unevaluated fitness");
    }
    Population next = current;
    for (std::size_t i = 0; i < current.size(); ++i) {
        if (*trial.fitness(i) < *current.fitness(i)) next.copy_row_from(i, trial, i);
    }
    return next;
}

BsaState bsa_initialize(RunTracker& tracker, const SearchSpace& space, const BsaConfig& cfg,
                        RandomSource& rng) {
    BsaState state;
    state.current = initialize_population(cfg.pop_size, space, rng);
    state.historical = initialize_population(cfg.pop_size, space, rng);
    tracker.set_iteration(0);
    tracker.evaluate(state.current);
    return state;
}

double bsa_generation(BsaState& state, RunTracker& tracker, const SearchSpace& space,
                      const BsaConfig& cfg, RandomSource& rng) {
    ++state.iteration;
    tracker.set_iteration(state.iteration);

    selection_one(state, rng);
    const double amplitude =
        draw_amplitude(cfg.amplitude, state.iteration, cfg.max_iterations, rng);
    Population mutant = mutate(state.current, state.historical, amplitude);
    boundary_control(mutant, space, rng, cfg.boundary);

    const auto map = make_crossover_map(state.current.size(), state.current.dims(), cfg.mix_rate,
                                        cfg.crossover_mode, rng);
    Population trial = crossover(state.current, mutant, map);
    boundary_control(trial, space, rng, cfg.boundary);
    tracker.evaluate(trial);

    state.current = selection_two(state.current, trial);
    state.current.generation = state.iteration;
    return amplitude;
}

RunResult bsa_minimize(const Objective& f, const SearchSpace& space, const BsaConfig& cfg,
                       RandomSource& rng) {
    cfg.validate();
    space.validate();
    RunTracker tracker(f, cfg.target, cfg.record_trace);
    BsaState state = bsa_initialize(tracker, space, cfg, rng);
    tracker.record_trace(std::numeric_limits<double>::quiet_NaN());

    while (state.iteration < cfg.max_iterations && !tracker.should_stop()) {
        const double amplitude = bsa_generation(state, tracker, space, cfg, rng);
        tracker.record_trace(amplitude);
    }
    return tracker.finish(state.iteration);
}

}  // namespace bsaopt
