#include <benchmark/benchmark.h>

#include "fcs/continuum.hpp"
#include "fcs/oracle.hpp"
#include "fcs/special_functions.hpp"

namespace {

void BM_BesselSequence(benchmark::State& state) {
  const int n_max = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fcs::spherical_bessel_j_sequence(n_max, {3.0, 2.0}));
}
BENCHMARK(BM_BesselSequence)->Arg(16)->Arg(64)->Arg(256);

void BM_CoeffTable(benchmark::State& state) {
  const fcs::ScatterParams p(2.0, 1.0);
  const int n_max = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fcs::coeff_table(p, n_max));
}
BENCHMARK(BM_CoeffTable)->Arg(16)->Arg(64)->Arg(128);

void BM_OracleTable(benchmark::State& state) {
  const fcs::ScatterParams p(2.0, 1.0);
  const int n_max = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fcs::oracle_table(p, n_max));
}
BENCHMARK(BM_OracleTable)->Arg(10)->Arg(30);

void BM_ChannelDistribution(benchmark::State& state) {
  const fcs::ScatterParams p(1.0, 0.0);
  const double nbar = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fcs::channel_distribution(p, nbar, fcs::Channel::Forward));
}
BENCHMARK(BM_ChannelDistribution)->Arg(1)->Arg(10)->Arg(50);

void BM_JointDistribution(benchmark::State& state) {
  const fcs::ScatterParams p(1.0, 1.0);
  const double nbar = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fcs::joint_distribution(p, nbar));
}
BENCHMARK(BM_JointDistribution)->Arg(1)->Arg(5)->Arg(10);

void BM_ContinuumSqueezed(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(fcs::continuum_distribution(fcs::SqueezedState{1.0, 0.0}, 0.5, fcs::Channel::Forward, 40));
  }
}
BENCHMARK(BM_ContinuumSqueezed);

}  // namespace

BENCHMARK_MAIN();
