#include <benchmark/benchmark.h>

#include "mhess/singular.hpp"

using namespace mhess;

namespace {

void BM_SingularMassDiagonal(benchmark::State& state) {
  const LogMaxSpec spec{static_cast<double>(state.range(0)), 0.05};
  for (auto _ : state) benchmark::DoNotOptimize(singular_mass(spec, spec));
}
BENCHMARK(BM_SingularMassDiagonal)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_SingularMassMixed(benchmark::State& state) {
  const double k = static_cast<double>(state.range(0));
  const LogMaxSpec u{k, 0.05, 0, 1, Orientation::u};
  const LogMaxSpec v{k, 0.05, 0, 1, Orientation::v};
  for (auto _ : state) benchmark::DoNotOptimize(singular_mass(u, v));
}
BENCHMARK(BM_SingularMassMixed)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_GradientNormLogMax(benchmark::State& state) {
  const LogMaxSpec spec{2.0, 0.05};
  for (auto _ : state) benchmark::DoNotOptimize(gradient_norm_squared(W12Subject::log_max, spec));
}
BENCHMARK(BM_GradientNormLogMax)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
