#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "fracdev/seminorms.hpp"

using namespace fracdev::seminorm;

namespace {

std::vector<double> walk(std::size_t n) {
  std::mt19937_64 gen(11);
  std::normal_distribution<double> normal;
  std::vector<double> v(n);
  double w = 0.0;
  for (double& x : v) x = (w += normal(gen));
  return v;
}

}  // namespace

// Quadratic dynamic programme. Arg: number of points
static void BM_PvarDp(benchmark::State& state) {
  const auto v = walk(static_cast<std::size_t>(state.range(0)));
  const auto spec = SemiNormSpec::pvar(3.0);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(spec, v, 1.0));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PvarDp)->RangeMultiplier(2)->Range(65, 4097)->Complexity(benchmark::oNSquared);

static void BM_SupNorm(benchmark::State& state) {
  const auto v = walk(4097);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(SemiNormSpec::sup(), v, 1.0 / 4096.0));
}
BENCHMARK(BM_SupNorm);
