// Copyright 2026 The LSE Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Serial reference vs OpenMP for the two data-parallel verifiers.

#include <benchmark/benchmark.h>

#include "lse/instances.h"
#include "lse/verify.h"

namespace {

void BM_EnumeratePolytopes(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const bool parallel = state.range(1) != 0;
  const lse::GameInstance g = lse::SmoothedInstance(m, 2 * m, 0.05, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lse::EnumeratePolytopes(g, lse::LpArithmetic::kDouble, parallel));
  }
  state.SetLabel(parallel ? "omp" : "serial");
}
BENCHMARK(BM_EnumeratePolytopes)->ArgsProduct({{3, 5, 8}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_CheckSingularAssumption(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const bool parallel = state.range(1) != 0;
  const lse::GameInstance g = lse::SmoothedInstance(m, m, 0.05, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        lse::CheckSingularAssumption(g, 0.05, lse::kDefaultSubmatrixBudget, 0, parallel));
  }
  state.SetLabel(parallel ? "omp" : "serial");
}
BENCHMARK(BM_CheckSingularAssumption)->ArgsProduct({{3, 4, 6}, {0, 1}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
