#include <benchmark/benchmark.h>

#include "moeadps/engine.hpp"
#include "moeadps/problems.hpp"

namespace {

moeadps::AlgorithmConfig partial_update_config(long budget) {
  moeadps::AlgorithmConfig config;
  config.population_size = 500;
  config.update_count = 50;
  config.budget = budget;
  config.checkpoint_stride = 1000000;  // snapshots excluded from the timing
  return config;
}

void BM_IterationPartialUpdate(benchmark::State& state) {
  const auto problem = moeadps::make_problem("dtlz2");
  auto config = partial_update_config(1000000);
  auto engine_state = moeadps::initialize_state(config, problem, 7);
  for (auto _ : state) {
    moeadps::advance_iteration(engine_state);
  }
  state.SetItemsProcessed(state.iterations() *
                          moeadps::selection_size(config));
}

void BM_IterationFullUpdate(benchmark::State& state) {
  const auto problem = moeadps::make_problem("dtlz2");
  auto config = partial_update_config(100000000);
  config.update_count = 498;
  auto engine_state = moeadps::initialize_state(config, problem, 7);
  for (auto _ : state) {
    moeadps::advance_iteration(engine_state);
  }
  state.SetItemsProcessed(state.iterations() *
                          moeadps::selection_size(config));
}

void BM_FullRunUf1(benchmark::State& state) {
  const auto problem = moeadps::make_problem("uf1");
  auto config = partial_update_config(state.range(0));
  for (auto _ : state) {
    auto result = moeadps::run(config, problem, 11);
    benchmark::DoNotOptimize(result);
  }
}

}  // namespace

BENCHMARK(BM_IterationPartialUpdate);
BENCHMARK(BM_IterationFullUpdate);
BENCHMARK(BM_FullRunUf1)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
