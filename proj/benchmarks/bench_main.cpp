#include "bsaopt/bsa.hpp"
#include "bsaopt/functions.hpp"
#include "bsaopt/stats.hpp"

#include <benchmark/benchmark.h>

using namespace bsaopt;

namespace {

void BM_BsaGeneration(benchmark::State& state) {
    const auto d = static_cast<std::size_t>(state.range(0));
    const auto space = SearchSpace::box(d, -5.12, 5.12);
    const Objective f = formulas::rastrigin;
    BsaConfig cfg;
    RandomSource rng(1, 0);
    RunTracker tracker(f, std::nullopt, false);
    BsaState s = bsa_initialize(tracker, space, cfg, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(bsa_generation(s, tracker, space, cfg, rng));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.pop_size));
}
BENCHMARK(BM_BsaGeneration)->Arg(2)->Arg(10)->Arg(30)->Arg(60);

void BM_WilcoxonExact(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::vector<double> a(n), b(n, 0.0);
    RandomSource rng(2, 0);
    for (auto& v : a) v = rng.uniform(-1.0, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(stats::wilcoxon_signed_rank(a, b));
}
BENCHMARK(BM_WilcoxonExact)->Arg(12)->Arg(30);

void BM_Function(benchmark::State& state) {
    const auto reg = registry();
    const auto& f = reg[static_cast<std::size_t>(state.range(0) - 1)];
    const std::size_t d = f.dimension_for(30);
    std::vector<double> x(d);
    RandomSource rng(3, 0);
    for (std::size_t j = 0; j < d; ++j) x[j] = rng.uniform(f.low, f.up);
    for (auto _ : state) benchmark::DoNotOptimize(f.formula(x));
    state.SetLabel(f.name);
}
BENCHMARK(BM_Function)->DenseRange(1, 16);

}  // namespace

BENCHMARK_MAIN();
