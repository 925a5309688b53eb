#include <benchmark/benchmark.h>

#include <diracsea/circuit.hpp>
#include <diracsea/lattice.hpp>
#include <diracsea/walk1d.hpp>
#include <diracsea/walk3d.hpp>

using namespace diracsea;

static void BM_GapCertificate(benchmark::State& state) {
  const WalkParams p = WalkParams::from_mass_phase(Model::modified, 0.2, find_theta(0.2));
  const auto grid = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gap_certificate(p, grid));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GapCertificate)->Arg(512)->Arg(4096);

static void BM_Dispersion(benchmark::State& state) {
  const WalkParams p = WalkParams::from_mass_phase(Model::modified, 0.2, 3 * kPi / 8);
  double q = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dispersion(q, p));
    q += 1e-6;
  }
}
BENCHMARK(BM_Dispersion);

static void BM_GapScan3(benchmark::State& state) {
  const WalkParams p = WalkParams::from_mass_phase(Model::modified, 0.2, 3 * kPi / 8);
  const auto grid = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gap_scan3(p, grid));
}
BENCHMARK(BM_GapScan3)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_LatticeStep(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const WalkParams p = WalkParams::from_mass_phase(Model::modified, 0.2, kPi / 8);
  LatticeState s = LatticeState::delta(n, n / 2, Chirality::r);
  for (auto _ : state) {
    s = step(s, p);
    benchmark::DoNotOptimize(s);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LatticeStep)->Arg(1024)->Arg(16384);

static void BM_CircuitApply(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const QubitCircuit c =
      build_circuit(n, WalkParams::from_mass_phase(Model::modified, 0.2, 3 * kPi / 8));
  RegisterState s = RegisterState::basis(n, 0b0110);
  for (auto _ : state) {
    s = apply_circuit(std::move(s), c);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_CircuitApply)->Arg(4)->Arg(6);

BENCHMARK_MAIN();
