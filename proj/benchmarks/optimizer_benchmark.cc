// Copyright 2026 The Authors.
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

#include "dmc/candidates.h"
#include "dmc/choice_model.h"
#include "dmc/neural_scorer.h"
#include "dmc/population.h"
#include "dmc/search.h"

namespace {

using namespace dmc;

ThresholdDiscountPair pair(int64_t t, int64_t d) {
  return ThresholdDiscountPair::make(Money::from_units(t), Money::from_units(d));
}

std::vector<ConsumerProfile> people(size_t n) {
  PopulationSpec spec;
  spec.count = n;
  spec.stretch_ratio = 0.5;
  return synthesize_population(spec, 1);
}

std::vector<ThresholdDiscountPair> ground(size_t n) {
  std::vector<ThresholdDiscountPair> g;
  for (size_t i = 0; i < n; ++i) {
    g.push_back(pair(25 + 5 * static_cast<int64_t>(i), 1 + static_cast<int64_t>(i)));
  }
  return g;
}

ChoiceModelParams noisy() {
  ChoiceModelParams params;
  params.noise_scale = 2.0;
  return params;
}

void BM_SimulatorEvaluate(benchmark::State& state) {
  const auto population = people(static_cast<size_t>(state.range(0)));
  const auto g = ground(8);
  const CampaignSet menu(g);
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulator_evaluate(menu, population, noisy()));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulatorEvaluate)->Arg(200)->Arg(2000);

void BM_Greedy(benchmark::State& state) {
  const auto population = people(200);
  const auto g = ground(static_cast<size_t>(state.range(0)));
  const SimulatorOracle oracle(noisy());
  for (auto _ : state) {
    benchmark::DoNotOptimize(greedy_search(g, population, oracle));
  }
}
BENCHMARK(BM_Greedy)->Arg(12)->Arg(24);

void BM_RandomizedUsm(benchmark::State& state) {
  const auto population = people(200);
  const auto g = ground(static_cast<size_t>(state.range(0)));
  const SimulatorOracle oracle(noisy());
  uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(randomized_usm(g, population, oracle, seed++));
  }
}
BENCHMARK(BM_RandomizedUsm)->Arg(12)->Arg(24);

void BM_Exhaustive(benchmark::State& state) {
  const auto population = people(200);
  const auto g = ground(static_cast<size_t>(state.range(0)));
  const SimulatorOracle oracle(noisy());
  for (auto _ : state) {
    benchmark::DoNotOptimize(exhaustive_search(g, population, oracle));
  }
}
BENCHMARK(BM_Exhaustive)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_FilterByRules(benchmark::State& state) {
  RuleSet rules;
  CandidatePool pool = generate_candidates(rules);
  int64_t r = 0;
  for (auto& e : pool.entries) e.revenue = Money::from_cents((r++ * 7919) % 1000);
  for (auto _ : state) {
    benchmark::DoNotOptimize(filter_by_rules(pool, rules));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(pool.entries.size()));
}
BENCHMARK(BM_FilterByRules);

void BM_NeuralScore(benchmark::State& state) {
  const auto weights = ScorerWeights::zeros(FeatureConfig{}, 64);
  FeatureBundle bundle;
  bundle.sparse_onehot.assign(19, 0);
  bundle.target = pair(40, 4);
  for (int64_t i = 0; i < state.range(0); ++i) bundle.not_target.push_back(pair(50 + 5 * i, 5 + i));
  for (auto _ : state) {
    benchmark::DoNotOptimize(neural_score(bundle, weights));
  }
}
BENCHMARK(BM_NeuralScore)->Arg(0)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
