#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "mhess/hermitian.hpp"
#include "mhess/sampling.hpp"

using namespace mhess;

namespace {

std::vector<HermitianMatrix> tuple(int n, int m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<HermitianMatrix> as;
  for (int i = 0; i < m; ++i) as.push_back(sampling::cone_matrix(rng, n, m));
  return as;
}

void BM_PointSigmas(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto a = tuple(n, 1, 1).front();
  const Metric g = Metric::identity(n);
  for (auto _ : state) benchmark::DoNotOptimize(point_sigmas(a, g));
}
BENCHMARK(BM_PointSigmas)->DenseRange(1, 8);

void BM_HessianDensityWithMetric(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(2);
  const Metric g = sampling::random_metric(rng, n);
  const auto a = tuple(n, 1, 3).front();
  for (auto _ : state) benchmark::DoNotOptimize(hessian_density(a, g, n));
}
BENCHMARK(BM_HessianDensityWithMetric)->DenseRange(2, 8, 2);

void BM_GeneralizedEigenvalues(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(4);
  const Metric g = sampling::random_metric(rng, n);
  const auto a = tuple(n, 1, 5).front();
  for (auto _ : state) benchmark::DoNotOptimize(generalized_eigenvalues(a, g));
}
BENCHMARK(BM_GeneralizedEigenvalues)->DenseRange(2, 8, 2);

void BM_MixedDensity(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int m = static_cast<int>(state.range(1));
  const auto as = tuple(n, m, 6);
  const Metric g = Metric::identity(n);
  for (auto _ : state) benchmark::DoNotOptimize(mixed_hessian_density(as, g));
}
BENCHMARK(BM_MixedDensity)->Args({2, 2})->Args({4, 2})->Args({4, 4})->Args({6, 3})->Args({8, 8});

}  // namespace

BENCHMARK_MAIN();
