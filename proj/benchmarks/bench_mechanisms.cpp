#include <benchmark/benchmark.h>

#include "trivote/analysis.hpp"
#include "trivote/mechanisms.hpp"
#include "trivote/random_instances.hpp"

using namespace trivote;

namespace {

MetricInstance instance_of(std::int64_t agents) {
  Rng rng(1234);
  return random_planar_instance(rng, static_cast<std::size_t>(agents), 8);
}

}  // namespace

static void BM_RrDistribution(benchmark::State& state) {
  const MetricInstance inst = instance_of(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rr_distribution(inst));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RrDistribution)->Arg(25)->Arg(50)->Arg(100)->Arg(200)->Complexity();

static void BM_RoDistribution(benchmark::State& state) {
  const MetricInstance inst = instance_of(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ro_distribution(inst));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RoDistribution)->Arg(25)->Arg(50)->Arg(100)->Arg(200)->Complexity();

static void BM_SampleRun(benchmark::State& state) {
  const MetricInstance inst = instance_of(50);
  Rng rng(99);
  for (auto _ : state)
    benchmark::DoNotOptimize(sample_mechanism(inst, MechanismId::RandomReferee, rng));
}
BENCHMARK(BM_SampleRun);

static void BM_MonteCarlo100k(benchmark::State& state) {
  const MetricInstance inst = instance_of(50);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        monte_carlo_distortion(inst, MechanismId::RandomOligarchy, 100000, 7, 2));
}
BENCHMARK(BM_MonteCarlo100k);

BENCHMARK_MAIN();
