#include <benchmark/benchmark.h>

#include <vector>

#include "trivote/plane_search.hpp"
#include "trivote/rng.hpp"
#include "trivote/search.hpp"

using namespace trivote;

namespace {

std::vector<PlanarConfig> random_configs(std::size_t count) {
  Rng rng(4321);
  std::vector<PlanarConfig> configs(count);
  for (PlanarConfig& cfg : configs)
    for (Point& p : cfg.points) p = {rng.uniform_double(), rng.uniform_double()};
  return configs;
}

std::vector<PlanarConfig> grid_configs(std::size_t count, const GridSpec& grid) {
  Rng rng(8765);
  const double d = grid.delta();
  std::vector<PlanarConfig> configs(count);
  for (PlanarConfig& cfg : configs) {
    const double col = d * static_cast<double>(rng.uniform_index(grid.alpha_count()));
    cfg.points[0] = {col, 0.0};
    cfg.points[1] = {col, 1.0};
    for (int i = 2; i < 5; ++i)
      cfg.points[i] = {d * static_cast<double>(rng.uniform_index(grid.axis_points())),
                       d * static_cast<double>(rng.uniform_index(grid.axis_points()))};
  }
  return configs;
}

}  // namespace

static void BM_GeometricMedian(benchmark::State& state) {
  const auto configs = random_configs(512);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(geometric_median(std::span<const Point>(configs[i].points)));
    i = (i + 1) % configs.size();
  }
}
BENCHMARK(BM_GeometricMedian);

static void BM_PessimisticDistortion(benchmark::State& state) {
  const auto configs = random_configs(512);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pessimistic_distortion(configs[i]));
    i = (i + 1) % configs.size();
  }
}
BENCHMARK(BM_PessimisticDistortion);

static void BM_SearchScores(benchmark::State& state) {
  const GridSpec grid{10};
  const auto configs = grid_configs(512, grid);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(search_scores(configs[i], grid));
    i = (i + 1) % configs.size();
  }
}
BENCHMARK(BM_SearchScores);

static void BM_GridSearchFull(benchmark::State& state) {
  SearchOptions options;
  options.delta_inverse = static_cast<std::uint64_t>(state.range(0));
  options.threads = 2;
  for (auto _ : state) benchmark::DoNotOptimize(grid_search(options));
}
BENCHMARK(BM_GridSearchFull)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_GridSearchCollinear(benchmark::State& state) {
  SearchOptions options;
  options.delta_inverse = static_cast<std::uint64_t>(state.range(0));
  options.mode = SearchMode::Collinear;
  options.threads = 2;
  for (auto _ : state) benchmark::DoNotOptimize(grid_search(options));
}
BENCHMARK(BM_GridSearchCollinear)->Arg(40)->Arg(75)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
