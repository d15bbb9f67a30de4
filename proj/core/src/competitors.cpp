#include "bsaopt/competitors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

namespace bsaopt {

namespace {

constexpr double kNoAmplitude = std::numeric_limits<double>::quiet_NaN();

void require(bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
}

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

std::string to_string(Algorithm a) {
    switch (a) {
    case Algorithm::BSA: return "BSA";
    case Algorithm::DE: return "DE";
    case Algorithm::PSO: return "PSO";
    case Algorithm::ABC: return "ABC";
    case Algorithm::FF: return "FF";
    }
    return "?";
}

Algorithm parse_algorithm(const std::string& name) {
    std::string up = name;
    std::transform(up.begin(), up.end(), up.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    for (Algorithm a : kAllAlgorithms) {
        if (to_string(a) == up) return a;
    }
    throw ConfigError("unknown algorithm '" + name + "'; valid: BSA, DE, PSO, ABC, FF");
}

void CompetitorConfig::validate() const {
    require(pop_size >= 1, "pop_size must be at least 1");
    switch (algorithm) {
    case Algorithm::BSA:
        throw ConfigError("BSA is configured through BsaConfig");
    case Algorithm::DE:
        require(pop_size >= 4, "DE/rand/1 needs pop_size >= 4");
        require(finite_nonneg(de.f_weight), "de.f_weight must be finite and >= 0");
        require(de.crossover_rate >= 0.0 && de.crossover_rate <= 1.0,
                "de.crossover_rate must lie in [0, 1]");
        break;
    case Algorithm::PSO:
        require(pso.inertia >= 0.0 && pso.inertia < 1.0, "pso.inertia must lie in [0, 1)");
        require(finite_nonneg(pso.cognitive), "pso.cognitive must be finite and >= 0");
        require(finite_nonneg(pso.social), "pso.social must be finite and >= 0");
        require(std::isfinite(pso.velocity_clamp_fraction) && pso.velocity_clamp_fraction > 0.0,
                "pso.velocity_clamp_fraction must be > 0");
        break;
    case Algorithm::ABC:
        require(!abc.trial_limit || *abc.trial_limit > 0.0, "abc.trial_limit must be > 0");
        break;
    case Algorithm::FF:
        require(finite_nonneg(ff.beta0), "ff.beta0 must be finite and >= 0");
        require(ff.gamma >= 0.0, "ff.gamma must be >= 0");
        require(finite_nonneg(ff.alpha), "ff.alpha must be finite and >= 0");
        require(std::isfinite(ff.alpha_decay) && ff.alpha_decay > 0.0,
                "ff.alpha_decay must be > 0");
        break;
    }
    if (target) require(target->epsilon >= 0.0, "target epsilon must be >= 0");
}

std::size_t max_evaluations_per_iteration(Algorithm a, std::size_t pop_size) {
    return a == Algorithm::ABC ? 2 * pop_size + 1 : pop_size;
}

RunResult de_minimize(const Objective& f, const SearchSpace& space, const CompetitorConfig& cfg,
                      RandomSource& rng) {
    cfg.validate();
    space.validate();
    const std::size_t n = cfg.pop_size;
    const std::size_t d = space.dims();
    RunTracker tracker(f, cfg.target, cfg.record_trace);

    Population pop = initialize_population(n, space, rng);
    tracker.evaluate(pop);
    tracker.record_trace(kNoAmplitude);

    std::size_t it = 0;
    while (it < cfg.max_iterations && !tracker.should_stop()) {
        tracker.set_iteration(++it);
        Population trial(n, d);
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t r1, r2, r3;
            do { r1 = rng.uniform_index(n); } while (r1 == i);
            do { r2 = rng.uniform_index(n); } while (r2 == i || r2 == r1);
            do { r3 = rng.uniform_index(n); } while (r3 == i || r3 == r1 || r3 == r2);
            const std::size_t jrand = rng.uniform_index(d);
            for (std::size_t j = 0; j < d; ++j) {
                const bool take = rng.uniform() < cfg.de.crossover_rate || j == jrand;
                trial.at(i, j) = take ? pop.at(r1, j) + cfg.de.f_weight * (pop.at(r2, j) - pop.at(r3, j))
                                      : pop.at(i, j);
            }
        }
        boundary_control(trial, space, rng, cfg.boundary);
        tracker.evaluate(trial);
        for (std::size_t i = 0; i < n; ++i) {
            if (*trial.fitness(i) < *pop.fitness(i)) pop.copy_row_from(i, trial, i);
        }
        pop.generation = it;
        tracker.record_trace(kNoAmplitude);
    }
    return tracker.finish(it);
}

RunResult pso_minimize(const Objective& f, const SearchSpace& space, const CompetitorConfig& cfg,
                       RandomSource& rng) {
    cfg.validate();
    space.validate();
    const std::size_t n = cfg.pop_size;
    const std::size_t d = space.dims();
    const auto& p = cfg.pso;
    RunTracker tracker(f, cfg.target, cfg.record_trace);

    Population swarm = initialize_population(n, space, rng);
    tracker.evaluate(swarm);
    tracker.record_trace(kNoAmplitude);

    std::vector<double> velocity(n * d, 0.0);
    std::vector<double> vmax(d);
    for (std::size_t j = 0; j < d; ++j) {
        vmax[j] = p.velocity_clamp_fraction * (space.up(j) - space.low(j));
    }
    Population personal = swarm;
    std::size_t global = *personal.best_index();

    std::size_t it = 0;
    while (it < cfg.max_iterations && !tracker.should_stop()) {
        tracker.set_iteration(++it);
        for (std::size_t i = 0; i < n; ++i) {
            bool moved = false;
            for (std::size_t j = 0; j < d; ++j) {
                const double x = swarm.at(i, j);
                const double r1 = rng.uniform();
                const double r2 = rng.uniform();
                double& v = velocity[i * d + j];
                v = p.inertia * v + p.cognitive * r1 * (personal.at(i, j) - x) +
                    p.social * r2 * (personal.at(global, j) - x);
                v = std::clamp(v, -vmax[j], vmax[j]);
                const double next = x + v;
                if (next != x) {
                    moved = true;
                    swarm.at(i, j) = next;
                }
                if (!(next >= space.low(j) && next <= space.up(j))) v = 0.0;
            }
            if (moved) swarm.invalidate(i);
        }
        boundary_control(swarm, space, rng, cfg.boundary);
        tracker.evaluate(swarm);
        for (std::size_t i = 0; i < n; ++i) {
            if (*swarm.fitness(i) < *personal.fitness(i)) personal.copy_row_from(i, swarm, i);
        }
        global = *personal.best_index();
        swarm.generation = it;
        tracker.record_trace(kNoAmplitude);
    }
    return tracker.finish(it);
}

std::vector<double> abc_neighbor(std::span<const double> source, std::span<const double> partner,
                                 std::size_t j, double phi) {
    std::vector<double> v(source.begin(), source.end());
    v[j] = source[j] + phi * (source[j] - partner[j]);
    return v;
}

RunResult abc_minimize(const Objective& f, const SearchSpace& space, const CompetitorConfig& cfg,
                       RandomSource& rng) {
    cfg.validate();
    space.validate();
    const std::size_t n = cfg.pop_size;
    const std::size_t d = space.dims();
    const double limit = cfg.abc.trial_limit.value_or(static_cast<double>(n * d));
    RunTracker tracker(f, cfg.target, cfg.record_trace);

    Population food = initialize_population(n, space, rng);
    tracker.evaluate(food);
    tracker.record_trace(kNoAmplitude);
    std::vector<std::size_t> trials(n, 0);
    Population candidate(1, d);
    std::size_t scouts = 0;

    auto explore = [&](std::size_t i) {
        std::size_t k = i;
        if (n > 1) {
            k = rng.uniform_index(n - 1);
            if (k >= i) ++k;
        }
        const std::size_t j = rng.uniform_index(d);
        const double phi = rng.uniform(-1.0, 1.0);
        const auto v = abc_neighbor(food.row(i), food.row(k), j, phi);
        candidate.set_member(0, Individual{v, std::nullopt});
        boundary_control(candidate, space, rng, cfg.boundary);
        tracker.evaluate(candidate);
        if (*candidate.fitness(0) < *food.fitness(i)) {
            food.copy_row_from(i, candidate, 0);
            trials[i] = 0;
        } else {
            ++trials[i];
        }
    };

    std::vector<double> weight(n);
    std::size_t it = 0;
    while (it < cfg.max_iterations && !tracker.should_stop()) {
        tracker.set_iteration(++it);

        for (std::size_t i = 0; i < n; ++i) explore(i);

        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double fi = *food.fitness(i);
            weight[i] = fi >= 0.0 ? 1.0 / (1.0 + fi) : 1.0 + std::abs(fi);
            total += weight[i];
        }
        for (std::size_t o = 0; o < n; ++o) {
            std::size_t pick = n - 1;
            if (total > 0.0 && std::isfinite(total)) {
                double r = rng.uniform() * total;
                for (std::size_t i = 0; i < n; ++i) {
                    r -= weight[i];
                    if (r < 0.0) {
                        pick = i;
                        break;
                    }
                }
            } else {
                pick = rng.uniform_index(n);
            }
            explore(pick);
        }

        const auto worst = std::max_element(trials.begin(), trials.end());
        if (static_cast<double>(*worst) > limit) {
            const auto i = static_cast<std::size_t>(worst - trials.begin());
            for (std::size_t j = 0; j < d; ++j) food.at(i, j) = rng.uniform(space.low(j), space.up(j));
            food.invalidate(i);
            tracker.evaluate(food);
            trials[i] = 0;
            ++scouts;
        }
        food.generation = it;
        tracker.record_trace(kNoAmplitude);
    }
    auto result = tracker.finish(it);
    result.scouts = scouts;
    return result;
}

double firefly_attraction(double beta0, double gamma, double r2) {
    if (r2 <= 0.0) return beta0;
    return beta0 * std::exp(-gamma * r2);
}

RunResult ff_minimize(const Objective& f, const SearchSpace& space, const CompetitorConfig& cfg,
                      RandomSource& rng) {
    cfg.validate();
    space.validate();
    const std::size_t n = cfg.pop_size;
    const std::size_t d = space.dims();
    const auto& p = cfg.ff;
    RunTracker tracker(f, cfg.target, cfg.record_trace);

    Population swarm = initialize_population(n, space, rng);
    tracker.evaluate(swarm);
    tracker.record_trace(kNoAmplitude);

    std::vector<double> range(d);
    for (std::size_t j = 0; j < d; ++j) range[j] = space.up(j) - space.low(j);
    Population moving(1, d);
    double alpha = p.alpha;

    std::size_t it = 0;
    while (it < cfg.max_iterations && !tracker.should_stop()) {
        tracker.set_iteration(++it);
        for (std::size_t i = 0; i < n; ++i) {
            moving.copy_row_from(0, swarm, i);
            auto x = moving.row(0);
            bool attracted = false;
            for (std::size_t k = 0; k < n; ++k) {
                if (k == i || !(*swarm.fitness(k) < *moving.fitness(0))) continue;
                attracted = true;
                const auto y = swarm.row(k);
                double r2 = 0.0;
                for (std::size_t j = 0; j < d; ++j) r2 += (x[j] - y[j]) * (x[j] - y[j]);
                const double beta = firefly_attraction(p.beta0, p.gamma, r2);
                for (std::size_t j = 0; j < d; ++j) {
                    x[j] += beta * (y[j] - x[j]) + alpha * (rng.uniform() - 0.5) * range[j];
                }
            }
            if (!attracted && alpha > 0.0) {
                for (std::size_t j = 0; j < d; ++j) x[j] += alpha * (rng.uniform() - 0.5) * range[j];
            }
            const auto before = swarm.row(i);
            if (!std::equal(x.begin(), x.end(), before.begin())) moving.invalidate(0);
            boundary_control(moving, space, rng, cfg.boundary);
            tracker.evaluate(moving);
            swarm.copy_row_from(i, moving, 0);
        }
        alpha *= p.alpha_decay;
        swarm.generation = it;
        tracker.record_trace(kNoAmplitude);
    }
    return tracker.finish(it);
}

RunResult competitor_minimize(const Objective& f, const SearchSpace& space,
                              const CompetitorConfig& cfg, RandomSource& rng) {
    switch (cfg.algorithm) {
    case Algorithm::DE: return de_minimize(f, space, cfg, rng);
    case Algorithm::PSO: return pso_minimize(f, space, cfg, rng);
    case Algorithm::ABC: return abc_minimize(f, space, cfg, rng);
    case Algorithm::FF: return ff_minimize(f, space, cfg, rng);
    case Algorithm::BSA: break;
    }
    throw ConfigError("competitor_minimize does not run BSA; use bsa_minimize");
}

}  // namespace bsaopt
