// Copyright 2026 The Unlearn Authors
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

#include <benchmark/benchmark.h>

#include "unlearn/random_ops.hpp"
#include "unlearn/recovery.hpp"
#include "unlearn/teleport.hpp"

using namespace unlearn;

static void BM_Svd(benchmark::State& state) {
  CounterRng rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  const ComplexMatrix a = random::ginibre(n, n, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(svd(a));
  }
}
BENCHMARK(BM_Svd)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

static void BM_ProcrusteanPlan(benchmark::State& state) {
  CounterRng rng(2);
  const auto n = static_cast<std::size_t>(state.range(0));
  const KrausOperator k(random::contraction(n, 0.1, 0.9, rng), "k");
  for (auto _ : state) {
    benchmark::DoNotOptimize(procrustean_plan(k));
  }
}
BENCHMARK(BM_ProcrusteanPlan)->Arg(2)->Arg(4)->Arg(8);

static void BM_PartialFilterIterate(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(partial_filter_iterate(0.8, 0.6, 200, 0.0));
  }
}
BENCHMARK(BM_PartialFilterIterate);

static void BM_PartialFilterTree(benchmark::State& state) {
  const auto budget = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_partial_filter_tree(0.8, 0.6, budget, FilterSchedule::kBreadthFirst));
  }
}
BENCHMARK(BM_PartialFilterTree)->Arg(8)->Arg(32);

static void BM_BoundOracle(benchmark::State& state) {
  const KrausOperator k(ComplexMatrix::diagonal({0.8, 0.6}), "k0");
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_bound_bruteforce(k, 1000, 7, 100));
  }
}
BENCHMARK(BM_BoundOracle)->Unit(benchmark::kMillisecond);

static void BM_TeleportRun(benchmark::State& state) {
  const teleport::TeleportChannel channel(1.0);
  CounterRng rng(3);
  const teleport::Amplitudes input{Complex(0.6), Complex(0.0, 0.8)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(channel.run(input, rng));
  }
}
BENCHMARK(BM_TeleportRun);

BENCHMARK_MAIN();
