#include <benchmark/benchmark.h>

#include "driftlab/detect.hpp"
#include "driftlab/linalg.hpp"
#include "driftlab/rng.hpp"

namespace {

using namespace driftlab;

Matrix gaussian(Index rows, Index cols, std::uint64_t seed, double shift = 0.0) {
  Rng rng(seed);
  Matrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) m(r, c) = rng.normal() + shift;
  }
  return m;
}

void BM_PairwiseSqDists(benchmark::State& state) {
  const Matrix x = gaussian(state.range(0), state.range(1), 1);
  for (auto _ : state) benchmark::DoNotOptimize(pairwise_sq_dists(x, x));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_PairwiseSqDists)->Args({500, 100})->Args({2000, 100})->Unit(benchmark::kMillisecond);

void BM_MmdPermutationTest(benchmark::State& state) {
  const Index n = state.range(0);
  const Matrix x = gaussian(n, 100, 1);
  const Matrix y = gaussian(n, 100, 2, 0.05);
  MmdOptions options;
  options.permutations = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(mmd_permutation_test(x, y, options, 3));
}
BENCHMARK(BM_MmdPermutationTest)->Args({500, 200})->Args({1000, 200})->Unit(benchmark::kMillisecond);

void BM_KsMultivariate(benchmark::State& state) {
  const Matrix x = gaussian(state.range(0), 100, 1);
  const Matrix y = gaussian(state.range(0) / 3, 100, 2);
  for (auto _ : state) benchmark::DoNotOptimize(ks_multivariate(x, y));
}
BENCHMARK(BM_KsMultivariate)->Arg(3000)->Arg(15000)->Unit(benchmark::kMillisecond);

void BM_SvdTruncated(benchmark::State& state) {
  const Matrix a = gaussian(state.range(0), state.range(1), 4);
  for (auto _ : state) benchmark::DoNotOptimize(svd_truncated(a, state.range(2), 5));
}
BENCHMARK(BM_SvdTruncated)->Args({1000, 300, 50})->Args({3000, 768, 50})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
