#include <benchmark/benchmark.h>

#include "mhess/instances.hpp"
#include "mhess/measures.hpp"

using namespace mhess;

namespace {

void BM_Sample(benchmark::State& state) {
  const TorusGrid grid(2, static_cast<int>(state.range(0)));
  const auto p = instances::coupled_trig(2);
  for (auto _ : state) benchmark::DoNotOptimize(sample(p, grid));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * grid.size()));
}
BENCHMARK(BM_Sample)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_MassSweep(benchmark::State& state) {
  const TorusGrid grid(2, static_cast<int>(state.range(0)));
  const TorusField u = sample(instances::coupled_trig(2), grid);
  const RegionMask all = RegionMask::full(grid);
  for (auto _ : state) benchmark::DoNotOptimize(integrate_hessian_measure(u, 2, all));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * grid.size()));
}
BENCHMARK(BM_MassSweep)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_MixedMeasure(benchmark::State& state) {
  const TorusGrid grid(2, static_cast<int>(state.range(0)));
  const std::vector<TorusField> us{sample(instances::trig_pair_first(2), grid),
                                   sample(instances::trig_pair_second(2), grid)};
  for (auto _ : state) benchmark::DoNotOptimize(mixed_measure(us));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * grid.size()));
}
BENCHMARK(BM_MixedMeasure)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
