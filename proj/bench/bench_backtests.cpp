// Serial reference vs OpenMP-parallel paths for the two hot kernels: the
// Monte Carlo experiment and the elicitability grid search.
#include <benchmark/benchmark.h>

#include "esbacktest/measures.hpp"
#include "esbacktest/scoring.hpp"
#include "esbacktest/sim.hpp"

using namespace esbacktest;

namespace {

ScenarioConfig bench_config(std::int64_t reps) {
    ScenarioConfig cfg;
    cfg.scenario = Scenario::A;
    cfg.seed = 1;
    cfg.reps = static_cast<std::size_t>(reps);
    return cfg;
}

void BM_experiment_serial(benchmark::State& state) {
    const ScenarioConfig cfg = bench_config(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_experiment_serial(cfg));
    }
}

void BM_experiment_parallel(benchmark::State& state) {
    const ScenarioConfig cfg = bench_config(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_experiment(cfg));
    }
}

GridSearchBox bench_box(const DistributionSpec& dist, const RiskLevel& level, double step) {
    const double tv = var_of(dist, level);
    const double te = es_of(dist, level);
    return GridSearchBox{tv - 0.5, tv + 0.5, te - 0.5, te + 0.5, step};
}

void BM_grid_serial(benchmark::State& state) {
    const ScoringSpec spec(RiskLevel(0.025), GChoice::Identity, GChoice::BoundedLogistic);
    const auto dist = DistributionSpec::normal(0.0, 1.0);
    const GridSearchBox box = bench_box(dist, RiskLevel(0.025), 0.02);
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify_elicitability_serial(spec, dist, box));
    }
}

void BM_grid_parallel(benchmark::State& state) {
    const ScoringSpec spec(RiskLevel(0.025), GChoice::Identity, GChoice::BoundedLogistic);
    const auto dist = DistributionSpec::normal(0.0, 1.0);
    const GridSearchBox box = bench_box(dist, RiskLevel(0.025), 0.02);
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify_elicitability(spec, dist, box));
    }
}

} // namespace

BENCHMARK(BM_experiment_serial)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_experiment_parallel)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_grid_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_grid_parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
