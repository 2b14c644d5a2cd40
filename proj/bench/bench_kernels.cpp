#include <benchmark/benchmark.h>

#include "biped5/dynamics.hpp"
#include "biped5/kernels.hpp"

using namespace biped5;
using kernels::Exec;

namespace {

const RobotParams kParams = default_params();

Exec exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Exec::serial : Exec::parallel;
}

void set_label(benchmark::State& state) {
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}

void BM_InertiaCheck(benchmark::State& state) {
  const auto thetas = kernels::random_angles(static_cast<std::size_t>(state.range(1)), 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(kernels::inertia_check(thetas, kParams, Backend::oracle, exec_of(state)));
  set_label(state);
  state.SetItemsProcessed(state.iterations() * state.range(1));
}
BENCHMARK(BM_InertiaCheck)->ArgsProduct({{0, 1}, {1000, 10000}})->Unit(benchmark::kMillisecond);

void BM_GravityGradient(benchmark::State& state) {
  const auto thetas = kernels::random_angles(static_cast<std::size_t>(state.range(1)), 2);
  const kernels::GravityFunction g = [](const Vec5& q, const RobotParams& p) {
    return gravity_vector(q, p);
  };
  for (auto _ : state)
    benchmark::DoNotOptimize(kernels::gravity_gradient_error(thetas, kParams, g, exec_of(state)));
  set_label(state);
  state.SetItemsProcessed(state.iterations() * state.range(1));
}
BENCHMARK(BM_GravityGradient)->ArgsProduct({{0, 1}, {10000}})->Unit(benchmark::kMillisecond);

void BM_Ledger(benchmark::State& state) {
  const auto states = kernels::random_states(static_cast<std::size_t>(state.range(1)), 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        kernels::discrepancy_ledger(states, kParams, oracle::Chain::rendering, exec_of(state)));
  set_label(state);
  state.SetItemsProcessed(state.iterations() * state.range(1));
}
BENCHMARK(BM_Ledger)->ArgsProduct({{0, 1}, {100, 1000}})->Unit(benchmark::kMillisecond);

void BM_TrackingSweep(benchmark::State& state) {
  std::vector<GaitSpec> specs(static_cast<std::size_t>(state.range(1)));
  for (std::size_t i = 0; i < specs.size(); ++i) specs[i].alpha = 0.5 * double(i) / double(specs.size());
  SimConfig cfg;
  cfg.integrator = Integrator::rk4;
  for (auto _ : state)
    benchmark::DoNotOptimize(
        kernels::tracking_sweep(kParams, specs, ControllerGains::defaults(), cfg, exec_of(state)));
  set_label(state);
  state.SetItemsProcessed(state.iterations() * state.range(1));
}
BENCHMARK(BM_TrackingSweep)->ArgsProduct({{0, 1}, {16}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
