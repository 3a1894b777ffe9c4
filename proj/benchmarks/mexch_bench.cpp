#include <benchmark/benchmark.h>

#include "mexch/exact.hpp"
#include "mexch/generators.hpp"
#include "mexch/simulator.hpp"

namespace {

using namespace mexch;

void BM_Symmetrize(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto shape = SystemShape::with_alphabet_sizes({n, 2}, {2, 2});
  const auto law = random_multi_exchangeable_law(shape, 1);
  for (auto _ : state) benchmark::DoNotOptimize(symmetrize(law));
}
BENCHMARK(BM_Symmetrize)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_VerifySuffstat(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto law = random_multi_exchangeable_law(SystemShape::with_alphabet_sizes({n, n}, {3, 2}), 1);
  for (auto _ : state) benchmark::DoNotOptimize(verify_suffstat(law));
}
BENCHMARK(BM_VerifySuffstat)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_TvBoundCheck(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(tv_bound_check(6, 3, 3));
}
BENCHMARK(BM_TvBoundCheck)->Unit(benchmark::kMillisecond);

void BM_SimulatorStep(benchmark::State& state) {
  const auto model = default_coupled_model();
  const auto n = static_cast<std::size_t>(state.range(0));
  SplitMix64 rng(1);
  auto states = initial_states(model, {n, n}, rng);
  for (auto _ : state) {
    states = step(states, model, rng);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(2 * n));
}
BENCHMARK(BM_SimulatorStep)->Arg(10)->Arg(1000)->Arg(100000);

void BM_Run(benchmark::State& state) {
  const auto model = default_coupled_model();
  for (auto _ : state) benchmark::DoNotOptimize(run(model, {1000, 1000}, model.steps, 20, 1));
}
BENCHMARK(BM_Run)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
