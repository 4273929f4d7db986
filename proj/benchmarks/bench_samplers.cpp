#include <benchmark/benchmark.h>

#include "uwalk/random_length.hpp"
#include "uwalk/saw.hpp"
#include "uwalk/srw_kernel.hpp"
#include "uwalk/worm.hpp"

using namespace uwalk;

static void BM_BerrettiSokalStep(benchmark::State& state) {
  const TorusSpec spec(5, state.range(0));
  BerrettiSokalChain chain(spec, 0.11314084, state.range(1) != 0, Philox4x32(1, 0));
  chain.run(100000);
  for (auto _ : state) chain.step();
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_BerrettiSokalStep)->Args({9, 0})->Args({9, 1})->Args({17, 1});

static void BM_WormStep(benchmark::State& state) {
  const TorusSpec spec(5, state.range(0));
  WormChain chain(spec, 0.1134248, Philox4x32(2, 0));
  for (auto _ : state) chain.step();
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_WormStep)->Arg(5)->Arg(9);

static void BM_LoopErasedSample(benchmark::State& state) {
  const TorusSpec spec(5, state.range(0));
  const LengthLaw law = LengthLaw::complete_graph(spec);
  LoopErasedSampler sampler(spec);
  Philox4x32 rng(3, 0);
  for (auto _ : state) benchmark::DoNotOptimize(sampler.sample(law.sample(rng), rng).length());
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_LoopErasedSample)->Arg(7)->Arg(13);

static void BM_SrwPointSeries(benchmark::State& state) {
  Point z{};
  z[0] = 8;
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(srw_point_series(z, 5, n).back());
}
BENCHMARK(BM_SrwPointSeries)->Arg(1000)->Arg(10000);
BENCHMARK_MAIN();
