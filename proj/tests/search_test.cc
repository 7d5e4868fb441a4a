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

#include <gtest/gtest.h>

#include <sstream>

#include "dmc/candidates.h"
#include "dmc/choice_model.h"
#include "dmc/error.h"
#include "dmc/population.h"
#include "dmc/search.h"
#include "test_support.h"

namespace dmc {
namespace {

using testing::P;

const std::vector<ConsumerProfile> kNobody;

testing::ModularOracle modular() {
  return testing::ModularOracle({{P(20, 1), 500},
                                 {P(30, 2), -300},
                                 {P(40, 3), 900},
                                 {P(50, 4), 100},
                                 {P(60, 5), -50},
                                 {P(70, 6), 250}});
}

const std::vector<ThresholdDiscountPair> kModularGround = {P(40, 3), P(20, 1), P(70, 6),
                                                           P(50, 4), P(60, 5), P(30, 2)};

testing::CoverageOracle coverage() {
  return testing::CoverageOracle({{P(20, 1), {0, 1}},
                                  {P(30, 2), {1, 2, 3}},
                                  {P(40, 3), {3, 4}},
                                  {P(50, 4), {0, 4, 5}},
                                  {P(60, 5), {5}}},
                                 {300, 120, 80, 410, 60, 200});
}

const std::vector<ThresholdDiscountPair> kCoverageGround = {P(20, 1), P(30, 2), P(40, 3),
                                                            P(50, 4), P(60, 5)};

std::vector<ConsumerProfile> cannibalization_people() {
  return ingest_population(testing::fixture("cannibalization.jsonl")).consumers;
}

TEST(Greedy, ModularTakesEveryPositivePair) {
  const auto oracle = modular();
  const auto result = greedy_search(kModularGround, kNobody, oracle);
  EXPECT_EQ(result.set, CampaignSet({P(20, 1), P(40, 3), P(50, 4), P(70, 6)}));
  EXPECT_EQ(result.revenue, Money::from_cents(1750));
  EXPECT_EQ(result.method, "greedy");
  EXPECT_EQ(result.oracle, "modular");
}

TEST(Greedy, ModularTopKWithCap) {
  const auto oracle = modular();
  const auto result = greedy_search(kModularGround, kNobody, oracle, 2);
  EXPECT_EQ(result.set, CampaignSet({P(20, 1), P(40, 3)}));
}

TEST(Greedy, StopsBeforeCannibalizingPair) {
  const auto people = cannibalization_people();
  const SimulatorOracle oracle(ChoiceModelParams{});
  const std::vector<ThresholdDiscountPair> ground = {P(39, 3), P(29, 1)};
  const auto result = greedy_search(ground, people, oracle);
  EXPECT_EQ(result.set, CampaignSet({P(39, 3)}));
  EXPECT_EQ(result.revenue, Money::from_units(72));
}

TEST(Greedy, EmptyCandidates) {
  const auto people = cannibalization_people();
  const SimulatorOracle oracle(ChoiceModelParams{});
  const auto result = greedy_search({}, people, oracle);
  EXPECT_TRUE(result.set.empty());
  EXPECT_EQ(result.revenue, Money::from_units(65));
}

TEST(Greedy, SkipsRuleBreakers) {
  const auto oracle = modular();
  const RuleSet rules;
  const std::vector<ThresholdDiscountPair> ground = {P(40, 3), P(50, 4)};
  auto close = testing::ModularOracle({{P(40, 3), 10}, {P(42, 4), 20}});
  const std::vector<ThresholdDiscountPair> tight = {P(40, 3), P(42, 4)};
  EXPECT_EQ(greedy_search(tight, kNobody, close, std::nullopt, &rules).set,
            CampaignSet({P(42, 4)}));
  EXPECT_EQ(greedy_search(ground, kNobody, oracle, std::nullopt, &rules).set.size(), 2u);
}

TEST(Exhaustive, SingleCandidate) {
  const auto people = cannibalization_people();
  const SimulatorOracle oracle(ChoiceModelParams{});
  const std::vector<ThresholdDiscountPair> good = {P(39, 3)};
  EXPECT_EQ(exhaustive_search(good, people, oracle).revenue, Money::from_units(72));
  const std::vector<ThresholdDiscountPair> bad = {P(29, 1)};
  const auto none = exhaustive_search(bad, people, oracle);
  EXPECT_TRUE(none.set.empty());
  EXPECT_EQ(none.revenue, Money::from_units(65));
}

TEST(Exhaustive, CannibalizationFixture) {
  const auto people = cannibalization_people();
  const SimulatorOracle oracle(ChoiceModelParams{});
  const std::vector<ThresholdDiscountPair> ground = {P(39, 3), P(29, 1)};
  EXPECT_EQ(exhaustive_search(ground, people, oracle).set, CampaignSet({P(39, 3)}));
}

TEST(Exhaustive, ModularEqualsGreedy) {
  const auto oracle = modular();
  const auto best = exhaustive_search(kModularGround, kNobody, oracle);
  const auto greedy = greedy_search(kModularGround, kNobody, oracle);
  EXPECT_EQ(best.set, greedy.set);
  EXPECT_EQ(best.revenue, greedy.revenue);
}

TEST(Exhaustive, TiesPreferSmallerSet) {
  auto oracle = testing::ModularOracle({{P(20, 1), 100}, {P(30, 2), 0}});
  const std::vector<ThresholdDiscountPair> ground = {P(20, 1), P(30, 2)};
  EXPECT_EQ(exhaustive_search(ground, kNobody, oracle).set, CampaignSet({P(20, 1)}));
}

TEST(Exhaustive, RespectsRulesAndSizeCap) {
  const auto oracle = modular();
  RuleSet rules;
  rules.min_threshold_gap = Money::from_units(15);
  const auto best = exhaustive_search(kModularGround, kNobody, oracle, std::nullopt, &rules);
  EXPECT_TRUE(satisfies_rules(best.set, rules));
  EXPECT_EQ(best.revenue, Money::from_cents(1650));
  EXPECT_EQ(exhaustive_search(kModularGround, kNobody, oracle, 1).set, CampaignSet({P(40, 3)}));
}

TEST(Exhaustive, RefusesHugeEnumeration) {
  std::vector<ThresholdDiscountPair> ground;
  for (int i = 0; i < 25; ++i) ground.push_back(P(10 + i, 1));
  const testing::ModularOracle oracle({});
  try {
    exhaustive_search(ground, kNobody, oracle);
    FAIL() << "expected a refusal";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kRefusal);
  }
  EXPECT_NO_THROW(exhaustive_search(ground, kNobody, oracle, 3));
}

TEST(SubsetsUpTo, Counts) {
  EXPECT_EQ(subsets_up_to(12, 12), 4096u);
  EXPECT_EQ(subsets_up_to(5, 2), 16u);
  EXPECT_EQ(subsets_up_to(0, 3), 1u);
}

TEST(Usm, ForcedAddOnPositiveMarginal) {
  const auto people = cannibalization_people();
  const SimulatorOracle oracle(ChoiceModelParams{});
  const std::vector<ThresholdDiscountPair> ground = {P(39, 3)};
  const auto [result, trace] = randomized_usm(ground, people, oracle, 5);
  ASSERT_EQ(trace.steps.size(), 1u);
  EXPECT_EQ(trace.steps[0].a, Money::from_units(7));
  EXPECT_EQ(trace.steps[0].b, Money::from_units(-7));
  EXPECT_EQ(trace.steps[0].add_probability, 1.0);
  EXPECT_EQ(trace.steps[0].branch, UsmBranch::kAdd);
  EXPECT_EQ(result.set, CampaignSet({P(39, 3)}));
}

TEST(Usm, ForcedDropOnNegativeMarginal) {
  const auto people = cannibalization_people();
  const SimulatorOracle oracle(ChoiceModelParams{});
  const std::vector<ThresholdDiscountPair> ground = {P(29, 1)};
  const auto [result, trace] = randomized_usm(ground, people, oracle, 5);
  EXPECT_EQ(trace.steps[0].add_probability, 0.0);
  EXPECT_EQ(trace.steps[0].branch, UsmBranch::kDrop);
  EXPECT_TRUE(result.set.empty());
}

TEST(Usm, ZeroOverZeroAdds) {
  const testing::ModularOracle oracle({{P(20, 1), 0}});
  const std::vector<ThresholdDiscountPair> ground = {P(20, 1)};
  const auto [result, trace] = randomized_usm(ground, kNobody, oracle, 0);
  EXPECT_EQ(trace.steps[0].add_probability, 1.0);
  EXPECT_EQ(result.set.size(), 1u);
}

TEST(Usm, TraceInvariants) {
  PopulationSpec spec;
  spec.count = 80;
  const auto people = synthesize_population(spec, 3);
  ChoiceModelParams params;
  params.noise_scale = 2.0;
  const SimulatorOracle oracle(params);
  std::vector<ThresholdDiscountPair> ground;
  for (int i = 0; i < 10; ++i) ground.push_back(P(30 + 5 * i, 1 + i));
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const auto [result, trace] = randomized_usm(ground, people, oracle, seed);
    ASSERT_EQ(trace.steps.size(), ground.size());
    size_t x = 0, y = ground.size();
    for (size_t i = 0; i < trace.steps.size(); ++i) {
      const auto& step = trace.steps[i];
      EXPECT_EQ(step.candidate, ground[i]);
      if (step.branch == UsmBranch::kAdd) {
        ++x;
        EXPECT_LT(step.draw, step.add_probability);
      } else {
        --y;
        EXPECT_GE(step.draw, step.add_probability);
      }
      EXPECT_EQ(step.x_size, x);
      EXPECT_EQ(step.y_size, y);
      EXPECT_LE(x, y);
    }
    EXPECT_EQ(x, y);
    EXPECT_EQ(trace.final_set, result.set);
    EXPECT_EQ(result.revenue, oracle.evaluate(result.set, people));
  }
}

TEST(Usm, SameSeedSameTraceAcrossWorkers) {
  PopulationSpec spec;
  spec.count = 120;
  const auto people = synthesize_population(spec, 4);
  ChoiceModelParams params;
  params.noise_scale = 1.0;
  const SimulatorOracle serial(params, 1);
  const SimulatorOracle threaded(params, 8);
  std::vector<ThresholdDiscountPair> ground;
  for (int i = 0; i < 8; ++i) ground.push_back(P(32 + 6 * i, 2 + i));
  const auto a = randomized_usm(ground, people, serial, 99);
  const auto b = randomized_usm(ground, people, threaded, 99);
  EXPECT_EQ(usm_trace_jsonl(a.second), usm_trace_jsonl(b.second));
  EXPECT_EQ(Json(a.first).dump(), Json(b.first).dump());
}

TEST(Usm, CoverageHasNoNegativeAbSteps) {
  const auto oracle = coverage();
  for (uint64_t seed = 0; seed < 10; ++seed) {
    EXPECT_EQ(count_negative_ab_steps(randomized_usm(kCoverageGround, kNobody, oracle, seed).second),
              0u);
  }
}

TEST(Usm, TraceLogShape) {
  const auto oracle = coverage();
  const auto trace = randomized_usm(kCoverageGround, kNobody, oracle, 1).second;
  std::istringstream lines(usm_trace_jsonl(trace));
  std::string line;
  size_t count = 0;
  while (std::getline(lines, line)) {
    const Json j = Json::parse(line);
    if (count == 0) EXPECT_EQ(j.at("seed").get<uint64_t>(), 1u);
    ++count;
  }
  EXPECT_EQ(count, 1 + kCoverageGround.size());
}

TEST(Submodularity, ModularHasNoViolations) {
  const auto report = check_submodularity(kModularGround, kNobody, modular());
  EXPECT_TRUE(report.submodular());
  EXPECT_GT(report.triples, 0u);
  EXPECT_FALSE(report.nonnegative());
}

TEST(Submodularity, CoverageHasNoViolations) {
  const auto report = check_submodularity(kCoverageGround, kNobody, coverage());
  EXPECT_TRUE(report.submodular());
  EXPECT_TRUE(report.nonnegative());
  // 3^5 pairs A subset of B, each with 5 - |B| outside elements.
  EXPECT_EQ(report.triples, 405u);
}

TEST(Submodularity, TwoPairCannibalizationAndSupermodularTable) {
  // f: {}=65 {a}=72 {b}=63 {a,b}=65. Shrinking gains, so no violation.
  const auto people = cannibalization_people();
  const SimulatorOracle oracle(ChoiceModelParams{});
  const std::vector<ThresholdDiscountPair> ground = {P(39, 3), P(29, 1)};
  EXPECT_TRUE(check_submodularity(ground, people, oracle).submodular());
  const std::vector<Money> supermodular = {Money(), Money::from_cents(1), Money::from_cents(1),
                                           Money::from_cents(5)};
  const auto report = check_submodularity_table(supermodular, 2);
  EXPECT_EQ(report.violations, 2u);
  EXPECT_EQ(report.worst_violation, Money::from_cents(3));
}

TEST(Submodularity, RefusesLargeGround) {
  std::vector<ThresholdDiscountPair> ground;
  for (int i = 0; i < 13; ++i) ground.push_back(P(10 + i, 1));
  EXPECT_THROW(check_submodularity(ground, kNobody, testing::ModularOracle({})), Error);
}

TEST(BetterResult, Ordering) {
  OptimizationResult a, b;
  a.revenue = Money::from_cents(10);
  b.revenue = Money::from_cents(9);
  EXPECT_TRUE(better_result(a, b));
  b.revenue = a.revenue;
  a.set = CampaignSet({P(20, 1)});
  b.set = CampaignSet({P(20, 1), P(30, 2)});
  EXPECT_TRUE(better_result(a, b));
  b.set = CampaignSet({P(20, 2)});
  EXPECT_TRUE(better_result(a, b));
  EXPECT_FALSE(better_result(a, a));
}

TEST(Recommend, ForcedInstanceCollapsesToOneSet) {
  const auto oracle = modular();
  RecommendOptions options;
  options.trials = 10;
  const auto results = recommend_top_k(kModularGround, kNobody, oracle, options);
  ASSERT_EQ(results.size(), 1u);
  EXPECT_EQ(results[0].set, greedy_search(kModularGround, kNobody, oracle).set);
}

TEST(Recommend, PadsWithDistinctGreedy) {
  // Every USM pass adds the zero-valued pair; greedy leaves it out.
  const testing::ModularOracle oracle({{P(20, 1), 100}, {P(30, 2), 0}});
  const std::vector<ThresholdDiscountPair> ground = {P(20, 1), P(30, 2)};
  RecommendOptions options;
  options.trials = 5;
  const auto results = recommend_top_k(ground, kNobody, oracle, options);
  ASSERT_EQ(results.size(), 2u);
  EXPECT_EQ(results[0].set, CampaignSet({P(20, 1)}));
  EXPECT_EQ(results[0].method, "greedy");
  EXPECT_EQ(results[1].set, CampaignSet({P(20, 1), P(30, 2)}));
}

TEST(Recommend, TopOneBeatsGreedyOnNoisyShop) {
  PopulationSpec spec;
  spec.count = 200;
  spec.stretch_ratio = 0.5;
  const auto people = synthesize_population(spec, 12);
  ChoiceModelParams params;
  params.noise_scale = 2.0;
  const SimulatorOracle oracle(params);
  RuleSet rules;
  rules.max_threshold = Money::from_units(150);
  rules.discount_step = Money::from_cents(50);
  const auto filtered =
      filter_by_rules(score_candidates(generate_candidates(rules), people, oracle), rules);
  auto ground = filtered.pairs();
  ground.resize(std::min<size_t>(ground.size(), 12));
  RecommendOptions options;
  options.trials = 50;
  options.seed = 12;
  const auto results = recommend_top_k(ground, people, oracle, options);
  ASSERT_FALSE(results.empty());
  EXPECT_LE(results.size(), 3u);
  EXPECT_GE(results[0].revenue, greedy_search(ground, people, oracle).revenue);
  for (size_t i = 1; i < results.size(); ++i) {
    EXPECT_FALSE(better_result(results[i], results[i - 1]));
  }
}

TEST(Recommend, TrialsBelowKIsConfigError) {
  RecommendOptions options;
  options.trials = 2;
  try {
    recommend_top_k(kModularGround, kNobody, modular(), options);
    FAIL() << "expected a config error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kConfig);
  }
}

TEST(Truncate, BackwardRemoval) {
  const auto oracle = modular();
  auto result = greedy_search(kModularGround, kNobody, oracle);
  const auto cut = truncate_result(result, 2, kNobody, oracle);
  EXPECT_EQ(cut.set, CampaignSet({P(20, 1), P(40, 3)}));
  EXPECT_EQ(cut.revenue, Money::from_cents(1400));
}

TEST(ResultJson, NoWallClockInDeterministicForm) {
  auto result = greedy_search(kModularGround, kNobody, modular());
  result.wall_time_ms = 12.5;
  const Json j = result;
  EXPECT_FALSE(j.contains("wall_time_ms"));
  EXPECT_EQ(result_timing_json(result).at("wall_time_ms").get<double>(), 12.5);
  const auto back = j.get<OptimizationResult>();
  EXPECT_EQ(back.set, result.set);
  EXPECT_EQ(back.revenue, result.revenue);
}

}  // namespace
}  // namespace dmc
