#include <benchmark/benchmark.h>

#include "cranesim/crane_dynamics.hpp"
#include "cranesim/lagrangian_oracle.hpp"
#include "cranesim/simulation_engine.hpp"
#include "cranesim/swing_damping_controller.hpp"

namespace {

using namespace cranesim;

GeneralizedState sample_state() {
  GeneralizedState s;
  s.q << 0.4, 0.7, 9.0, 0.1, -0.05;
  s.qdot << 0.05, -0.02, 0.1, 0.2, -0.1;
  return s;
}

control::Reference sample_reference() {
  control::Reference ref;
  ref.q1d << 0.5, 0.15, 12.0;
  return ref;
}

void BM_DynamicsMatrices(benchmark::State& state) {
  const CraneParameters p;
  const auto s = sample_state();
  for (auto _ : state) benchmark::DoNotOptimize(dynamics::dynamics_matrices(s, p));
}
BENCHMARK(BM_DynamicsMatrices);

void BM_ForwardDynamics(benchmark::State& state) {
  const CraneParameters p;
  const auto s = sample_state();
  const ActuationInput u(1000.0, 12000.0, -500.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dynamics::forward_dynamics(s, u, Vec5::Zero(), p));
  }
}
BENCHMARK(BM_ForwardDynamics);

void BM_ControllerEvaluation(benchmark::State& state) {
  const CraneParameters p;
  const control::SwingDampingController c(p, {}, sample_reference());
  const auto s = sample_state();
  for (auto _ : state) benchmark::DoNotOptimize(c(s));
}
BENCHMARK(BM_ControllerEvaluation);

void BM_OracleAccelerations(benchmark::State& state) {
  const CraneParameters p;
  const auto s = sample_state();
  const ActuationInput u(1000.0, 12000.0, -500.0);
  for (auto _ : state) benchmark::DoNotOptimize(oracle::oracle_accelerations(s, u, p));
}
BENCHMARK(BM_OracleAccelerations);

void BM_ClosedLoopRk4Step(benchmark::State& state) {
  const CraneParameters p;
  sim::SimulationConfig cfg;
  cfg.initial_state = sample_state();
  const auto law = sim::state_feedback({p, {}, sample_reference()});
  auto s = cfg.initial_state;
  for (auto _ : state) {
    s = sim::step(0.0, s, law, cfg, p, 1e-3);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_ClosedLoopRk4Step);

}  // namespace

BENCHMARK_MAIN();
