// Copyright 2026 The qlswalk Authors
//
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

#include <benchmark/benchmark.h>

#include <cstdint>

#include "qlswalk/instances.h"
#include "qlswalk/macaulay.h"
#include "qlswalk/qpe_sim.h"
#include "qlswalk/system_model.h"
#include "qlswalk/walk.h"

namespace {

using namespace qlswalk;

AugmentedSystem welded(int depth) { return welded_tree_system(make_welded_tree(depth, 1)); }

void BM_ComputeMetrics(benchmark::State& state) {
  const AugmentedSystem sys = welded(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(compute_metrics(sys).et);
}
BENCHMARK(BM_ComputeMetrics)->DenseRange(3, 6);

void BM_BuildWalkOperator(benchmark::State& state) {
  const AugmentedSystem sys = welded(static_cast<int>(state.range(0)));
  const StarStateSet states = build_star_states(build_walk_graph(sys), sys);
  for (auto _ : state) benchmark::DoNotOptimize(build_walk_operator(states).u.data());
  state.counters["dimension"] = static_cast<double>(states.dimension);
}
BENCHMARK(BM_BuildWalkOperator)->DenseRange(2, 4);

void BM_PhaseModelDense(benchmark::State& state) {
  const AugmentedSystem sys = welded(static_cast<int>(state.range(0)));
  const StarStateSet states = build_star_states(build_walk_graph(sys), sys);
  const WalkOperator op = build_walk_operator(states);
  for (auto _ : state) {
    benchmark::DoNotOptimize(PhaseEstimationModel::from_operator(op, 0.05).phases().data());
  }
}
BENCHMARK(BM_PhaseModelDense)->DenseRange(2, 4);

void BM_PhaseModelPrincipalAngles(benchmark::State& state) {
  const AugmentedSystem sys = welded(static_cast<int>(state.range(0)));
  const StarStateSet states = build_star_states(build_walk_graph(sys), sys);
  for (auto _ : state) {
    benchmark::DoNotOptimize(PhaseEstimationModel::from_star_states(states, 0.05).phases().data());
  }
}
BENCHMARK(BM_PhaseModelPrincipalAngles)->DenseRange(2, 6);

void BM_RunQls(benchmark::State& state) {
  const AugmentedSystem sys = make_random_consistent(12, 8, 0.6, 3);
  QlsOptions opt;
  opt.epsilon = 0.1;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    opt.seed = ++seed;
    benchmark::DoNotOptimize(run_qls(sys, opt).trace_distance);
  }
}
BENCHMARK(BM_RunQls);

void BM_BuildMacaulay(benchmark::State& state) {
  const PolynomialSystem f = make_sum_system(static_cast<int>(state.range(0)));
  const int h = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_macaulay(f, h, false).a.data());
}
BENCHMARK(BM_BuildMacaulay)->DenseRange(4, 10, 2);

}  // namespace

BENCHMARK_MAIN();
