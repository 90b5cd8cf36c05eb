// Copyright 2026 The uicheck Authors
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

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "uicheck/expectation.hpp"
#include "uicheck/expr.hpp"
#include "uicheck/family.hpp"
#include "uicheck/poussin.hpp"
#include "uicheck/sublinear.hpp"

namespace {

using namespace uic;

std::vector<double> weights(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> w(n);
  double total = 0.0;
  for (auto& x : w) total += x = u(rng);
  for (auto& x : w) x /= total;
  return w;
}

std::vector<double> values(std::mt19937_64& rng, std::size_t n, double max) {
  std::uniform_real_distribution<double> u(0.0, max);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

void BM_FiniteExcess(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  const Measure p = Measure::finite(weights(rng, n));
  const RandomVariable x = RandomVariable::finite(values(rng, n, 100.0));
  for (auto _ : state) benchmark::DoNotOptimize(excess(x, p, 17.5).value);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FiniteExcess)->Arg(64)->Arg(4096)->Arg(1 << 16);

void BM_FiniteTailSum(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto n = static_cast<std::size_t>(state.range(0));
  const Measure p = Measure::finite(weights(rng, n));
  const RandomVariable x = RandomVariable::finite(values(rng, n, 100.0));
  for (auto _ : state) benchmark::DoNotOptimize(tail_sum(x, p, 1).value);
}
BENCHMARK(BM_FiniteTailSum)->Arg(64)->Arg(1024);

void BM_CountableTailSum(benchmark::State& state) {
  const Measure p = Measure::countable([](std::uint64_t i) { return std::ldexp(1.0, -static_cast<int>(i) - 1); },
                                       [](std::uint64_t i) { return std::ldexp(1.0, -static_cast<int>(i) - 1); });
  const RandomVariable x = RandomVariable::countable([](std::uint64_t i) { return static_cast<double>(i); },
                                                     [](std::uint64_t i) { return static_cast<double>(i); },
                                                     [](std::uint64_t i) {
                                                       return (static_cast<double>(i) + 2.0) *
                                                              std::ldexp(1.0, -static_cast<int>(i) - 1);
                                                     });
  for (auto _ : state) benchmark::DoNotOptimize(tail_sum(x, p, 1).value);
}
BENCHMARK(BM_CountableTailSum)->Unit(benchmark::kMillisecond);

void BM_CounterexampleSuiPartialSum(benchmark::State& state) {
  const Counterexample ce = build_counterexample();
  Family k({ce.x}, ce.expectation);
  const std::vector<std::uint64_t> start{2};
  const Horizons h{1 << 16, static_cast<std::uint64_t>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(sle_sui_profile(k, start, h).points[0].result.value);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CounterexampleSuiPartialSum)->Arg(100000)->Arg(10000000)->Unit(benchmark::kMillisecond);

void BM_ExplicitSetUiProfile(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::vector<Measure> ms;
  for (int j = 0; j < state.range(0); ++j) ms.push_back(Measure::finite(weights(rng, 256)));
  Family k({RandomVariable::finite(values(rng, 256, 100.0))},
           std::make_shared<const SublinearExpectation>(MeasureSet::explicit_set(std::move(ms))));
  const std::vector<double> levels = default_level_grid();
  for (auto _ : state) benchmark::DoNotOptimize(sle_ui_profile(k, levels).points.back().result.value);
}
BENCHMARK(BM_ExplicitSetUiProfile)->Arg(1)->Arg(16)->Arg(128);

void BM_FindThresholds(benchmark::State& state) {
  std::mt19937_64 rng(4);
  Family k({RandomVariable::finite(values(rng, 512, 1000.0))}, Measure::finite(weights(rng, 512)));
  for (auto _ : state) benchmark::DoNotOptimize(find_thresholds(k, static_cast<int>(state.range(0))).count());
}
BENCHMARK(BM_FindThresholds)->Arg(5)->Arg(20);

void BM_CharacterizationExhaustive(benchmark::State& state) {
  std::mt19937_64 rng(5);
  const auto n = static_cast<std::size_t>(state.range(0));
  Family k({RandomVariable::finite(values(rng, n, 50.0))}, Measure::finite(weights(rng, n)));
  const std::vector<double> eps{0.5, 0.1, 0.01};
  for (auto _ : state) benchmark::DoNotOptimize(check_thm31(k, eps).events_examined);
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << state.range(0)));
}
BENCHMARK(BM_CharacterizationExhaustive)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_ExprEval(benchmark::State& state) {
  const ModelExpr e = ModelExpr::parse("1/(n*ln(n)) + min(n, 3)^2 - exp(-n/10)");
  std::uint64_t n = 2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(e(n));
    n = n == 1000 ? 2 : n + 1;
  }
}
BENCHMARK(BM_ExprEval);

}  // namespace

BENCHMARK_MAIN();
