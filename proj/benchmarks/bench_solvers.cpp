#include <benchmark/benchmark.h>

#include "relaxns/energy.hpp"
#include "relaxns/initial_data.hpp"
#include "relaxns/parabolic_solver.hpp"
#include "relaxns/relaxed_solver.hpp"

using namespace relaxns;

namespace {

const FluidParams kParams(1.0, 2.0, 1.0, 0.1, 0.1);

State sine_state(const Grid1D& g) {
  return make_initial_data({IcFamily::well_prepared_sine, 0.01, ""}, g, kParams);
}

void BM_RelaxedStep(benchmark::State& bench) {
  const Grid1D g(static_cast<std::size_t>(bench.range(0)));
  RelaxedStepper stepper(kParams, g, SchemeConfig{});
  State s = sine_state(g);
  const double dt = stepper.stable_dt(s);
  for (auto _ : bench) {
    stepper.advance(s, dt);
    benchmark::DoNotOptimize(s.v.data());
  }
  bench.SetItemsProcessed(bench.iterations() * bench.range(0));
}
BENCHMARK(BM_RelaxedStep)->RangeMultiplier(4)->Range(64, 4096);

void BM_ParabolicStep(benchmark::State& bench) {
  const Grid1D g(static_cast<std::size_t>(bench.range(0)));
  ParabolicStepper stepper(kParams.with_tau(0.0).with_epsilon(0.0), g, SchemeConfig{});
  ParabolicState s = ParabolicState::from(sine_state(g));
  const double dt = stepper.stable_dt(s);
  for (auto _ : bench) {
    stepper.advance(s, dt);
    benchmark::DoNotOptimize(s.v.data());
  }
  bench.SetItemsProcessed(bench.iterations() * bench.range(0));
}
BENCHMARK(BM_ParabolicStep)->RangeMultiplier(4)->Range(64, 4096);

void BM_EnergySnapshot(benchmark::State& bench) {
  const Grid1D g(static_cast<std::size_t>(bench.range(0)));
  const State s = sine_state(g);
  for (auto _ : bench) benchmark::DoNotOptimize(energy_snapshot(s, kParams, g));
  bench.SetItemsProcessed(bench.iterations() * bench.range(0));
}
BENCHMARK(BM_EnergySnapshot)->RangeMultiplier(4)->Range(64, 4096);

} // namespace

BENCHMARK_MAIN();
