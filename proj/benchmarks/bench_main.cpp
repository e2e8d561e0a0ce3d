#include <benchmark/benchmark.h>

#include <sparsecol/graph.hpp>
#include <sparsecol/oracle.hpp>
#include <sparsecol/sampler.hpp>
#include <sparsecol/treedp.hpp>

using namespace sparsecol;

static void BM_CountPath(benchmark::State& state) {
  const Graph g = path_graph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(count_tree(g, 40, {}, Arithmetic::Float));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CountPath)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

static void BM_CountCycleExact(benchmark::State& state) {
  const Graph g = cycle_graph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(count_unicyclic(g, 5, {}, Arithmetic::Exact));
}
BENCHMARK(BM_CountCycleExact)->Arg(16)->Arg(64)->Arg(256);

static void BM_BallClassify(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Graph g = generate_gnp(n, 5, 1);
  const std::uint32_t r = radius_for(static_cast<double>(n), 5);
  for (auto _ : state) benchmark::DoNotOptimize(classify_all_balls(g, r));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BallClassify)->RangeMultiplier(4)->Range(1 << 12, 1 << 16)->Unit(benchmark::kMillisecond)->Complexity();

static void BM_SampleGnp(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Graph g = generate_gnp(n, 5, 3);
  SamplerOptions opts;
  opts.radius = radius_for(static_cast<double>(n), 5);
  opts.record_steps = false;
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_colouring(g, 40, opts, ++seed));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SampleGnp)->RangeMultiplier(4)->Range(1 << 12, 1 << 16)->Unit(benchmark::kMillisecond)->Complexity();

static void BM_EnumeratePetersen(benchmark::State& state) {
  const Graph g = petersen_graph();
  for (auto _ : state) benchmark::DoNotOptimize(enumerate(g, static_cast<std::size_t>(state.range(0)), {}));
}
BENCHMARK(BM_EnumeratePetersen)->Arg(3)->Arg(4);
BENCHMARK_MAIN();
