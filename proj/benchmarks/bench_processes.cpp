#include <benchmark/benchmark.h>

#include <vector>

#include "fracdev/processes.hpp"

using namespace fracdev;
using process::Kind;

// Arg: grid level J
static void BM_RlpApply(benchmark::State& state) {
  const process::ProcessParams p(Kind::rlp, 1.5, 0.9);
  const process::Grid grid(static_cast<unsigned>(state.range(0)));
  const process::RlpKernel kernel(p, grid);
  rng::NoiseStream stream(2, 0);
  const auto noise = rng::sample_sas(p.alpha(), 1.0, grid.cells(), stream);
  std::vector<double> out(grid.points());
  for (auto _ : state) {
    kernel.apply(noise, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_RlpApply)->DenseRange(6, 12, 2);

static void BM_SimulatePath(benchmark::State& state) {
  const auto kind = static_cast<Kind>(state.range(0));
  const process::ProcessParams p(kind, 1.5, 0.9);
  const process::PathSimulator sim(p, process::Grid(10));
  process::PathSimulator::Workspace ws;
  std::vector<double> buf(sim.grid().points());
  std::uint64_t i = 0;
  for (auto _ : state) {
    sim.simulate_into(3, i++, buf, ws);
    benchmark::DoNotOptimize(buf.data());
  }
  state.SetLabel(std::string(process::to_string(kind)));
}
BENCHMARK(BM_SimulatePath)
    ->Arg(static_cast<int>(Kind::rlp))
    ->Arg(static_cast<int>(Kind::lmp))
    ->Arg(static_cast<int>(Kind::lfsm));
