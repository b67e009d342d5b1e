// Copyright 2026 The relayalloc Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// OpenMP kernels against their serial references.

#include <benchmark/benchmark.h>

#include "relayalloc/dual_solver.hpp"
#include "relayalloc/experiment.hpp"
#include "relayalloc/oracle.hpp"

namespace {

using namespace relayalloc;

ChannelRealization channel(std::size_t N, std::size_t K) {
  return generate_realization(SystemGeometry::uniform(K), NoiseModel::uniform(K), N, 17);
}

void BM_ProfitTable(benchmark::State& state) {
  const auto ch = channel(static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(build_profit_table(ch, 1e-3, IdleModel::kImproved));
}
void BM_ProfitTableSerial(benchmark::State& state) {
  const auto ch = channel(static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(build_profit_table_serial(ch, 1e-3, IdleModel::kImproved));
}
BENCHMARK(BM_ProfitTable)->Arg(16)->Arg(64)->Arg(128);
BENCHMARK(BM_ProfitTableSerial)->Arg(16)->Arg(64)->Arg(128);

void BM_Oracle(benchmark::State& state) {
  const auto ch = channel(4, 3);
  for (auto _ : state) benchmark::DoNotOptimize(oracle_solve(ch, 10.0));
}
void BM_OracleSerial(benchmark::State& state) {
  const auto ch = channel(4, 3);
  for (auto _ : state) benchmark::DoNotOptimize(oracle_solve_serial(ch, 10.0));
}
BENCHMARK(BM_Oracle)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleSerial)->Unit(benchmark::kMillisecond);

ExperimentSpec experiment() {
  ExperimentSpec spec;
  spec.n_values = {8};
  spec.total_power_values = {10};
  spec.schemes = {ExperimentScheme::parse("proposed"), ExperimentScheme::parse("conventional-df")};
  spec.trials = 64;
  return spec;
}

void BM_Experiment(benchmark::State& state) {
  const auto spec = experiment();
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment(spec));
}
void BM_ExperimentSerial(benchmark::State& state) {
  const auto spec = experiment();
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment_serial(spec));
}
BENCHMARK(BM_Experiment)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExperimentSerial)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
