#include <benchmark/benchmark.h>

#include <vector>

#include "fracdev/schauder.hpp"

using namespace fracdev::schauder;

// One interior sigma at level j. Arg: j
static void BM_SigmaRlp(benchmark::State& state) {
  const auto j = static_cast<unsigned>(state.range(0));
  const std::size_t n = std::size_t{1} << (j - 1);
  for (auto _ : state) benchmark::DoNotOptimize(sigma_rlp(j, n, 1.5, 0.9));
}
BENCHMARK(BM_SigmaRlp)->Arg(3)->Arg(9);

static void BM_SigmaLmp(benchmark::State& state) {
  const auto j = static_cast<unsigned>(state.range(0));
  const std::size_t n = std::size_t{1} << (j - 1);
  for (auto _ : state) benchmark::DoNotOptimize(sigma_lmp(j, n, 1.5, 0.9));
}
BENCHMARK(BM_SigmaLmp)->Arg(3)->Arg(9);

static void BM_Decompose(benchmark::State& state) {
  std::vector<double> v((std::size_t{1} << 12) + 1);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i % 37) * 0.1;
  for (auto _ : state) benchmark::DoNotOptimize(decompose(v));
}
BENCHMARK(BM_Decompose);
