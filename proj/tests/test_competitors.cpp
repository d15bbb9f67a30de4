#include "bsaopt/competitors.hpp"
#include "bsaopt/functions.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

using namespace bsaopt;

namespace {

double sphere(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
}

CompetitorConfig config(Algorithm a, std::size_t iterations = 2000) {
    CompetitorConfig c;
    c.algorithm = a;
    c.max_iterations = iterations;
    c.record_trace = true;
    return c;
}

int sphere_successes(Algorithm a) {
    auto cfg = config(a);
    cfg.record_trace = false;
    cfg.target = Target{0.0, 1e-6, true};
    int solved = 0;
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        RandomSource rng(seed, 1);
        const auto r = competitor_minimize(sphere, SearchSpace::box(2, -1.0, 1.0), cfg, rng);
        if (r.best_value <= 1e-6) ++solved;
    }
    return solved;
}

}  // namespace

class EveryCompetitor : public ::testing::TestWithParam<Algorithm> {};

TEST_P(EveryCompetitor, FeasibleMonotoneAndCounted) {
    const auto space = SearchSpace::box(3, -5.12, 5.12);
    std::size_t calls = 0;
    bool feasible = true;
    const Objective f = [&](std::span<const double> x) {
        ++calls;
        feasible = feasible && space.contains(x);
        return formulas::rastrigin(x);
    };
    const auto cfg = config(GetParam(), 150);
    RandomSource rng(21);
    const auto r = competitor_minimize(f, space, cfg, rng);
    EXPECT_TRUE(feasible);
    EXPECT_EQ(r.evaluations, calls);
    EXPECT_LE(r.evaluations,
              cfg.pop_size + cfg.max_iterations * max_evaluations_per_iteration(GetParam(), cfg.pop_size));
    ASSERT_EQ(r.trace.size(), cfg.max_iterations + 1);
    for (std::size_t k = 1; k < r.trace.size(); ++k) {
        EXPECT_LE(r.trace[k].best_fitness, r.trace[k - 1].best_fitness);
    }
}

TEST_P(EveryCompetitor, Deterministic) {
    const auto space = SearchSpace::box(2, -10.0, 10.0);
    const auto cfg = config(GetParam(), 100);
    RandomSource a(5), b(5);
    const auto ra = competitor_minimize(formulas::holder_table, space, cfg, a);
    const auto rb = competitor_minimize(formulas::holder_table, space, cfg, b);
    EXPECT_EQ(ra.best_value, rb.best_value);
    EXPECT_EQ(ra.best_coords, rb.best_coords);
    EXPECT_EQ(ra.evaluations, rb.evaluations);
}

TEST_P(EveryCompetitor, SolvesSphereMostly) { EXPECT_GE(sphere_successes(GetParam()), 20); }

INSTANTIATE_TEST_SUITE_P(Competitors, EveryCompetitor,
                         ::testing::Values(Algorithm::DE, Algorithm::PSO, Algorithm::ABC, Algorithm::FF),
                         [](const auto& info) { return to_string(info.param); });

TEST(Competitors, RejectBsaAndBadParams) {
    RandomSource rng(1);
    auto cfg = config(Algorithm::BSA);
    EXPECT_THROW(competitor_minimize(sphere, SearchSpace::box(2, -1.0, 1.0), cfg, rng), ConfigError);
    cfg = config(Algorithm::DE);
    cfg.pop_size = 3;
    EXPECT_THROW(cfg.validate(), ConfigError);
    cfg = config(Algorithm::PSO);
    cfg.pso.inertia = 1.0;
    EXPECT_THROW(cfg.validate(), ConfigError);
    cfg = config(Algorithm::DE);
    cfg.de.crossover_rate = 1.5;
    EXPECT_THROW(cfg.validate(), ConfigError);
    EXPECT_THROW(parse_algorithm("GA"), ConfigError);
    EXPECT_EQ(parse_algorithm("bsa"), Algorithm::BSA);
}

TEST(De, ZeroWeightNeverWorsens) {
    auto cfg = config(Algorithm::DE, 100);
    cfg.de.f_weight = 0.0;
    cfg.de.crossover_rate = 1.0;
    RandomSource rng(2);
    const auto r = de_minimize(sphere, SearchSpace::box(4, -3.0, 3.0), cfg, rng);
    for (std::size_t k = 1; k < r.trace.size(); ++k) {
        EXPECT_LE(r.trace[k].best_fitness, r.trace[k - 1].best_fitness);
    }
    EXPECT_EQ(r.evaluations, cfg.pop_size * (1 + cfg.max_iterations));
}

TEST(Pso, ZeroCoefficientsFreezeSwarm) {
    auto cfg = config(Algorithm::PSO, 50);
    cfg.pso.inertia = 0.0;
    cfg.pso.cognitive = 0.0;
    cfg.pso.social = 0.0;
    std::size_t calls = 0;
    const Objective f = [&](std::span<const double> x) {
        ++calls;
        return sphere(x);
    };
    RandomSource rng(3);
    const auto r = pso_minimize(f, SearchSpace::box(2, -1.0, 1.0), cfg, rng);
    EXPECT_EQ(calls, cfg.pop_size);
    for (const auto& row : r.trace) EXPECT_EQ(row.best_fitness, r.trace.front().best_fitness);
}

TEST(Abc, NeighborChangesOneCoordinate) {
    RandomSource rng(4);
    const std::vector<double> src{1.0, 2.0, 3.0, 4.0}, partner{-1.0, 5.0, 0.5, 7.0};
    for (int t = 0; t < 100; ++t) {
        const auto j = rng.uniform_index(4);
        const auto v = abc_neighbor(src, partner, j, rng.uniform(-1.0, 1.0) + 2.0);
        std::size_t changed = 0;
        for (std::size_t k = 0; k < 4; ++k) changed += v[k] != src[k];
        EXPECT_EQ(changed, 1u);
    }
}

TEST(Abc, InfiniteLimitMeansNoScouts) {
    auto cfg = config(Algorithm::ABC, 300);
    cfg.abc.trial_limit = std::numeric_limits<double>::infinity();
    RandomSource rng(5);
    const auto r = abc_minimize(sphere, SearchSpace::box(2, -1.0, 1.0), cfg, rng);
    EXPECT_EQ(r.scouts, 0u);
    EXPECT_EQ(r.evaluations, cfg.pop_size * (1 + 2 * cfg.max_iterations));

    cfg.abc.trial_limit = 1.0;
    RandomSource rng2(5);
    EXPECT_GT(abc_minimize(sphere, SearchSpace::box(2, -1.0, 1.0), cfg, rng2).scouts, 0u);
}

TEST(Firefly, NoForcesNoMovement) {
    auto cfg = config(Algorithm::FF, 40);
    cfg.ff.beta0 = 0.0;
    cfg.ff.alpha = 0.0;
    std::size_t calls = 0;
    const Objective f = [&](std::span<const double> x) {
        ++calls;
        return sphere(x);
    };
    RandomSource rng(6);
    ff_minimize(f, SearchSpace::box(3, -2.0, 2.0), cfg, rng);
    EXPECT_EQ(calls, cfg.pop_size);
}

TEST(Firefly, AttractionLimits) {
    EXPECT_EQ(firefly_attraction(1.0, 1.0, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(firefly_attraction(2.0, 0.5, 2.0), 2.0 * std::exp(-1.0));
    EXPECT_EQ(firefly_attraction(1.0, std::numeric_limits<double>::infinity(), 1e-3), 0.0);
}
