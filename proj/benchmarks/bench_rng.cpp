#include <benchmark/benchmark.h>

#include <vector>

#include "fracdev/stable_rng.hpp"

using namespace fracdev::rng;

static void BM_Philox(benchmark::State& state) {
  std::array<std::uint32_t, 4> ctr{0, 0, 0, 0};
  for (auto _ : state) {
    auto out = philox4x32(ctr, {0x12345678u, 0x9abcdef0u});
    benchmark::DoNotOptimize(out);
    ++ctr[0];
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Philox);

// Arg: alpha * 10
static void BM_FillSas(benchmark::State& state) {
  const StabilityIndex alpha(static_cast<double>(state.range(0)) / 10.0);
  std::vector<double> buf(4096);
  NoiseStream stream(1, 0);
  for (auto _ : state) {
    fill_sas(alpha, 1.0, buf, stream);
    benchmark::DoNotOptimize(buf.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(buf.size()));
}
BENCHMARK(BM_FillSas)->Arg(10)->Arg(15)->Arg(20);
