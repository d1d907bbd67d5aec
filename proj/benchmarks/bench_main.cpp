#include <benchmark/benchmark.h>

#include "somor/somor.hpp"

namespace {

somor::SecondOrderSystem msd(somor::Index n) {
  return somor::generate_msd(n);
}

void BM_LyapunovSolve(benchmark::State& state) {
  const auto sys = msd(state.range(0));
  const auto fos = somor::companion(sys);
  const somor::Matrix input =
      somor::subsystem_input_matrix(sys, somor::SubsystemTag::so);
  for (auto _ : state) {
    somor::Matrix p = somor::solve_gen_lyapunov(fos.e, fos.a, input);
    benchmark::DoNotOptimize(p.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LyapunovSolve)->RangeMultiplier(2)->Range(8, 128)->Complexity();

void BM_ControllabilityFactors(benchmark::State& state) {
  const auto sys = msd(state.range(0));
  for (auto _ : state) {
    somor::GramianFactors f = somor::controllability_factors(sys);
    benchmark::DoNotOptimize(f.r_so.data());
  }
}
BENCHMARK(BM_ControllabilityFactors)->Arg(32)->Arg(64)->Arg(128);

void BM_BtProject(benchmark::State& state) {
  const auto sys = msd(state.range(0));
  const auto factors = somor::controllability_factors(sys);
  const auto order = somor::OrderSpec::tolerance(1e-4);
  for (auto _ : state) {
    somor::Projection pr =
        somor::bt_project(factors.s, factors.r_so, order);
    benchmark::DoNotOptimize(pr.w.data());
  }
}
BENCHMARK(BM_BtProject)->Arg(64)->Arg(128);

void BM_Simulate(benchmark::State& state) {
  const auto sys = msd(state.range(0));
  const auto u = somor::InputSignal::exponential(0.2, -1.0);
  const somor::TimeGrid grid(0.0, 1.0, 1e-3);
  const somor::Vector z0 = somor::Vector::Ones(1);
  const somor::Vector w0 = somor::Vector::Ones(1);
  for (auto _ : state) {
    somor::Trajectory y = somor::simulate(sys, u, z0, w0, grid);
    benchmark::DoNotOptimize(y.samples.data());
  }
}
BENCHMARK(BM_Simulate)->Arg(32)->Arg(128);

void BM_EvalTransfer(benchmark::State& state) {
  const auto sys = msd(state.range(0));
  for (auto _ : state) {
    somor::ComplexMatrix h =
        somor::eval_transfer(sys, somor::SubsystemTag::so, {0.0, 1.0});
    benchmark::DoNotOptimize(h.data());
  }
}
BENCHMARK(BM_EvalTransfer)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
