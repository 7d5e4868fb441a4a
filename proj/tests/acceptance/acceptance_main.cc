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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "../brute_force.h"
#include "../test_support.h"
#include "dmc/candidates.h"
#include "dmc/choice_model.h"
#include "dmc/encoding.h"
#include "dmc/keyed_rng.h"
#include "dmc/neural_scorer.h"
#include "dmc/pipeline.h"
#include "dmc/population.h"
#include "dmc/search.h"

namespace {

namespace fs = std::filesystem;
using namespace dmc;
using testing::P;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string format(const char* fmt, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof(buffer), fmt, args...);
  return buffer;
}

// Random small shop whose revenue function passes the brute-force
// submodularity check; nullopt when the draw is rejected.
struct Instance {
  std::vector<ThresholdDiscountPair> ground;
  std::vector<ConsumerProfile> people;
  ChoiceModelParams params;
};

std::optional<Instance> draw_instance(uint64_t attempt) {
  RngStream rng(derive_seed(0xa99f, attempt), 0);
  Instance inst;
  PopulationSpec spec;
  spec.count = 2 + rng.below(19);
  spec.base_spend_mean = Money::from_cents(1200 + static_cast<int64_t>(rng.below(1300)));
  spec.stretch_ratio = 0.4 + 0.6 * rng.uniform();
  inst.people = synthesize_population(spec, rng.bits());
  inst.params.noise_scale = rng.below(2) == 0 ? 0.0 : 1.0;
  inst.params.effort_cost_rate = 0.125 * static_cast<double>(1 + rng.below(4));
  inst.params.seed = rng.bits();

  RuleSet rules;
  rules.max_threshold = Money::from_units(70);
  const SimulatorOracle oracle(inst.params);
  const auto filtered =
      filter_by_rules(score_candidates(generate_candidates(rules), inst.people, oracle), rules);
  inst.ground = filtered.pairs();
  const size_t n = 2 + rng.below(11);
  if (inst.ground.size() > n) inst.ground.resize(n);
  if (inst.ground.empty()) return std::nullopt;

  const auto report = check_submodularity(inst.ground, inst.people, oracle);
  if (!report.submodular() || !report.nonnegative()) return std::nullopt;
  return inst;
}

Verdict approximation() {
  const size_t wanted = 200;
  const size_t seeds = 50;
  size_t accepted = 0, attempts = 0, failures = 0, negative_ab = 0, ground_total = 0;
  double worst = 1e9;
  while (accepted < wanted && attempts < 20000) {
    const auto inst = draw_instance(attempts++);
    if (!inst) continue;
    ++accepted;
    ground_total += inst->ground.size();
    const SimulatorOracle oracle(inst->params);
    const Money opt = exhaustive_search(inst->ground, inst->people, oracle).revenue;
    double sum = 0;
    for (uint64_t s = 0; s < seeds; ++s) {
      const auto [result, trace] = randomized_usm(inst->ground, inst->people, oracle, s);
      sum += static_cast<double>(result.revenue.cents());
      negative_ab += count_negative_ab_steps(trace);
    }
    const double mean = sum / static_cast<double>(seeds);
    const double optimum = static_cast<double>(opt.cents());
    if (mean < 0.5 * optimum - 0.02 * optimum) ++failures;
    if (optimum > 0) worst = std::min(worst, mean / optimum);
  }
  return {accepted == wanted && failures == 0 && negative_ab == 0,
          format("%zu/%zu submodular instances (%zu draws, mean ground %.1f), %zu below "
                 "0.5*OPT-2%%, worst mean/OPT %.4f, negative a+b steps %zu",
                 accepted, wanted, attempts,
                 accepted ? static_cast<double>(ground_total) / accepted : 0.0, failures,
                 worst, negative_ab)};
}

Verdict method_ordering() {
  ExperimentConfig config = load_config(std::string(DMC_SOURCE_DIR) + "/configs/benchmark.json");
  const auto report = run_benchmark(config);
  std::map<std::string, const MethodSummary*> by_name;
  for (const auto& m : report.methods) by_name[m.name] = &m;
  const auto& ex = *by_name.at("Global Optimum Searching");
  const auto& mean = *by_name.at("Randomized USM Searching (mean)");
  const auto& greedy = *by_name.at("Greedy Searching");
  size_t twelve = 0;
  for (const auto& s : report.shops) twelve += s.candidates == 12;
  const size_t wins = report.usm_beats_greedy();
  const size_t shops = report.shops.size();
  const bool revenue = ex.revenue_cents >= mean.revenue_cents &&
                       mean.revenue_cents >= greedy.revenue_cents;
  const bool share = shops == 100 && wins * 100 >= 60 * shops;
  const bool timing = ex.wall_ms > mean.wall_ms && mean.wall_ms > greedy.wall_ms;
  return {revenue && share && timing && twelve == shops,
          format("%zu shops (%zu with 12 candidates); revenue exhaustive %.0f >= usm-mean "
                 "%.0f >= greedy %.0f: %s; usm-mean > greedy on %zu shops; wall %.0f > "
                 "%.0f > %.0f ms: %s",
                 shops, twelve, ex.revenue_cents, mean.revenue_cents, greedy.revenue_cents,
                 revenue ? "yes" : "no", wins, ex.wall_ms, mean.wall_ms, greedy.wall_ms,
                 timing ? "yes" : "no")};
}

Verdict non_monotonicity() {
  const auto people = ingest_population(testing::fixture("cannibalization.jsonl")).consumers;
  const ChoiceModelParams params;
  const Money one = simulator_evaluate(CampaignSet({P(39, 3)}), people, params);
  const Money two = simulator_evaluate(CampaignSet({P(39, 3), P(29, 1)}), people, params);
  const SimulatorOracle oracle(params);
  const std::vector<ThresholdDiscountPair> forward = {P(39, 3), P(29, 1)};
  const std::vector<ThresholdDiscountPair> backward = {P(29, 1), P(39, 3)};
  const auto g1 = greedy_search(forward, people, oracle);
  const auto g2 = greedy_search(backward, people, oracle);
  const CampaignSet expected({P(39, 3)});
  return {two < one && g1.set == expected && g2.set == expected,
          format("f({<39,3>,<29,1>}) = %s < f({<39,3>}) = %s; greedy keeps %s",
                 two.to_string().c_str(), one.to_string().c_str(), g1.set.to_string().c_str())};
}

Verdict isotonic() {
  std::vector<uint8_t> ten(500, 0), five(500, 0);
  std::fill(ten.begin(), ten.begin() + 10, 1);
  std::fill(five.begin(), five.begin() + 5, 1);
  const bool examples = isotonic_encode(Money::from_units(10)).bits() == ten &&
                        isotonic_encode(Money::from_units(5)).bits() == five;
  RngStream rng(0x150, 0);
  size_t failures = 0;
  for (int i = 0; i < 10000; ++i) {
    const int64_t unit = 1 + static_cast<int64_t>(rng.below(1000));
    const size_t length = 1 + rng.below(1000);
    const int64_t value = static_cast<int64_t>(rng.below(1000000));
    const auto bits = isotonic_encode(Money::from_cents(value), Money::from_cents(unit), length).bits();
    const size_t ones = static_cast<size_t>(std::count(bits.begin(), bits.end(), 1));
    const bool prefix = std::is_sorted(bits.rbegin(), bits.rend());
    if (!prefix || ones != std::min<size_t>(static_cast<size_t>(value / unit), length)) ++failures;
  }
  return {examples && failures == 0,
          format("$10 and $5 patterns %s; popcount property failures %zu/10000",
                 examples ? "exact" : "WRONG", failures)};
}

Verdict rule_filter() {
  RngStream rng(0xf117e5, 0);
  size_t failures = 0, kept_total = 0;
  for (int round = 0; round < 1000; ++round) {
    RuleSet rules;
    rules.min_threshold = Money::from_units(static_cast<int64_t>(5 + rng.below(20)));
    rules.max_threshold = rules.min_threshold + Money::from_units(static_cast<int64_t>(rng.below(80)));
    rules.min_threshold_gap = Money::from_cents(1 + static_cast<int64_t>(rng.below(1200)));
    rules.require_monotone_discounts = rng.below(4) != 0;
    const CandidatePool grid = generate_candidates(rules);
    CandidatePool pool;
    for (const auto& e : grid.entries) {
      if (rng.below(3) != 0) continue;
      pool.entries.push_back({e.pair, Money::from_cents(static_cast<int64_t>(rng.below(400)) - 100)});
    }
    const auto kept = filter_by_rules(pool, rules);
    kept_total += kept.entries.size();
    if (!satisfies_rules(kept.pairs(), rules)) ++failures;
  }
  CandidatePool example;
  example.entries = {{P(60, 1), Money::from_cents(100)}, {P(60, 2), Money::from_cents(90)}};
  const bool one_per_threshold =
      filter_by_rules(example, RuleSet{}).pairs() == std::vector{P(60, 1)};
  return {failures == 0 && one_per_threshold,
          format("1000 random pools, %zu kept entries, %zu rule violations; <60,1> vs <60,2> "
                 "keeps <60,1>: %s",
                 kept_total, failures, one_per_threshold ? "yes" : "no")};
}

std::map<std::string, std::string> artifacts(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name == "timings.json") continue;
    files[name] = read_text_file(entry.path().string());
  }
  return files;
}

Verdict determinism() {
  const auto root = testing::scratch_dir("acceptance-determinism");
  std::vector<std::map<std::string, std::string>> runs;
  for (const auto& [label, workers] :
       std::vector<std::pair<std::string, unsigned>>{{"a", 1}, {"b", 1}, {"c", 8}}) {
    ExperimentConfig config = load_config(std::string(DMC_SOURCE_DIR) + "/configs/example.json");
    config.oracle.simulator.noise_scale = 1.0;
    config.workers = workers;
    config.output_dir = (root / label).string();
    run_pipeline(config);
    runs.push_back(artifacts(root / label));
  }
  const bool same = runs[0] == runs[1] && runs[0] == runs[2];
  size_t bytes = 0;
  for (const auto& [name, text] : runs[0]) bytes += text.size();
  return {same && runs[0].size() >= 5,
          format("%zu artifacts (%zu bytes) byte-identical across 2 runs and workers {1, 8}: %s",
                 runs[0].size(), bytes, same ? "yes" : "no")};
}

Verdict brute_force() {
  RngStream rng(0xb7f, 0);
  size_t mismatches = 0, stretched = 0;
  for (uint64_t i = 0; i < 10000; ++i) {
    const auto c = testing::random_brute_case(rng, i);
    const auto expected = testing::brute_force_choice(c);
    const auto got = choice_simulate(CampaignSet(c.menu), c.consumer, c.params());
    if (got.spend.cents() != expected.spend || got.discount.cents() != expected.discount) {
      ++mismatches;
    }
    stretched += expected.spend != c.consumer.base_spend.cents();
  }
  return {mismatches == 0,
          format("10000 cases (%zu stretch to a threshold), %zu mismatches", stretched, mismatches)};
}

Verdict forward_conformance() {
  const ScorerWeights weights = load_scorer_weights(testing::fixture("scorer/scorer_weights.json"));
  const Json golden = Json::parse(read_text_file(testing::fixture("scorer/golden_scores.json")));
  std::ifstream in(testing::fixture("scorer/bundles.jsonl"));
  size_t count = 0, failures = 0;
  double worst = 0;
  for (std::string line; std::getline(in, line);) {
    if (line.empty()) continue;
    const auto bundle = Json::parse(line).get<FeatureBundle>();
    const double diff =
        std::abs(neural_score(bundle, weights) - golden.at("scores").at(count).get<double>());
    worst = std::max(worst, diff);
    failures += !(diff <= 1e-9);
    ++count;
  }
  return {count == 100 && failures == 0,
          format("%zu fixture bundles, %zu beyond 1e-9, max |diff| %.3g", count, failures, worst)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"approximation", approximation},
      {"method-ordering", method_ordering},
      {"non-monotonicity", non_monotonicity},
      {"isotonic-bit-exactness", isotonic},
      {"rule-filter-soundness", rule_filter},
      {"determinism", determinism},
      {"brute-force-equivalence", brute_force},
      {"forward-pass-conformance", forward_conformance},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict verdict;
    try {
      verdict = check();
    } catch (const std::exception& e) {
      verdict = {false, std::string("error: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %-26s %s (%.1f s)\n", verdict.pass ? "PASS" : "FAIL", name.c_str(),
                verdict.detail.c_str(), seconds);
    std::fflush(stdout);
    failed += !verdict.pass;
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
