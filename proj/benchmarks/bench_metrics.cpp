#include <benchmark/benchmark.h>

#include "moeadps/metrics.hpp"
#include "moeadps/rng.hpp"

namespace {

moeadps::PointSet random_points(std::size_t n, std::size_t m,
                                std::uint64_t seed) {
  moeadps::Rng rng(seed);
  moeadps::PointSet points(n, std::vector<double>(m));
  for (auto& p : points) {
    for (auto& v : p) v = rng.uniform01();
  }
  return points;
}

void BM_Hypervolume2d(benchmark::State& state) {
  const auto points = random_points(state.range(0), 2, 3);
  const std::vector<double> ref(2, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(moeadps::hypervolume(points, ref));
  }
}

void BM_Hypervolume3d(benchmark::State& state) {
  const auto points = random_points(state.range(0), 3, 3);
  const std::vector<double> ref(3, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(moeadps::hypervolume(points, ref));
  }
}

void BM_EafDiff(benchmark::State& state) {
  std::vector<moeadps::PointSet> runs_a, runs_b;
  for (int r = 0; r < 10; ++r) {
    runs_a.push_back(random_points(state.range(0), 2, 100 + r));
    runs_b.push_back(random_points(state.range(0), 2, 200 + r));
  }
  std::vector<moeadps::PointSet> all = runs_a;
  all.insert(all.end(), runs_b.begin(), runs_b.end());
  const auto grid = moeadps::make_eaf_grid(all, 2000);
  for (auto _ : state) {
    benchmark::DoNotOptimize(moeadps::eaf_diff(runs_a, runs_b, grid));
  }
}

}  // namespace

BENCHMARK(BM_Hypervolume2d)->Arg(100)->Arg(500);
BENCHMARK(BM_Hypervolume3d)->Arg(100)->Arg(500);
BENCHMARK(BM_EafDiff)->Arg(500)->Unit(benchmark::kMillisecond);
