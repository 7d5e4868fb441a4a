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

#include "dmc/campaign.h"
#include "dmc/error.h"
#include "dmc/serialization.h"
#include "test_support.h"

namespace dmc {
namespace {

using testing::P;

TEST(Money, IntegerCentsArithmetic) {
  const Money a = Money::from_units(60);
  const Money b = Money::from_cents(525);
  EXPECT_EQ((a - b).cents(), 5475);
  EXPECT_EQ((b * 3).cents(), 1575);
  EXPECT_EQ(Money::from_cents(-5).to_string(), "-$0.05");
  EXPECT_EQ(Money::from_cents(123456).to_string(), "$1234.56");
  EXPECT_EQ(max(a, b), a);
}

TEST(Pair, RejectsDiscountAboveThreshold) {
  EXPECT_THROW(P(10, 11), Error);
  EXPECT_THROW(ThresholdDiscountPair::make(Money::from_units(10), Money::from_cents(-1)),
               Error);
  EXPECT_EQ(P(90, 10).net(), Money::from_units(80));
  EXPECT_EQ(P(39, 3).to_string(), "<39.00,3.00>");
}

TEST(CampaignSet, SortsAndRejectsDuplicateThresholds) {
  const CampaignSet set({P(70, 8), P(60, 5)});
  ASSERT_EQ(set.size(), 2u);
  EXPECT_EQ(set.pairs()[0], P(60, 5));
  EXPECT_THROW(CampaignSet({P(60, 5), P(60, 6)}), Error);
  EXPECT_THROW(set.with(P(70, 9)), Error);
  EXPECT_TRUE(set.with(P(80, 9)).contains(P(80, 9)));
  EXPECT_FALSE(set.without(P(60, 5)).has_threshold(Money::from_units(60)));
}

TEST(CampaignSet, FingerprintDependsOnContentOnly) {
  EXPECT_EQ(CampaignSet({P(60, 5), P(70, 8)}).fingerprint(),
            CampaignSet({P(70, 8), P(60, 5)}).fingerprint());
  EXPECT_NE(CampaignSet({P(60, 5)}).fingerprint(), CampaignSet({P(60, 6)}).fingerprint());
}

TEST(Trigger, HighestMetThresholdApplies) {
  const CampaignSet menu({P(60, 5), P(70, 8)});
  EXPECT_EQ(triggered_pair(menu, Money::from_units(60)), P(60, 5));
  EXPECT_EQ(triggered_pair(menu, Money::from_units(70)), P(70, 8));
  EXPECT_EQ(applied_discount(menu, Money::from_units(70)), Money::from_units(8));
  EXPECT_FALSE(triggered_pair(menu, Money::from_cents(5999)).has_value());
  EXPECT_FALSE(triggered_pair(CampaignSet(), Money::from_units(100)).has_value());
}

TEST(Trigger, PaysThresholdMinusDiscount) {
  const CampaignSet menu({P(90, 10)});
  const auto hit = triggered_pair(menu, Money::from_units(90));
  ASSERT_TRUE(hit.has_value());
  EXPECT_EQ(Money::from_units(90) - applied_discount(menu, Money::from_units(90)),
            Money::from_units(80));
}

TEST(Rules, Examples) {
  const RuleSet rules;
  EXPECT_TRUE(satisfies_rules(CampaignSet({P(50, 4), P(60, 5)}), rules));
  EXPECT_FALSE(satisfies_rules(CampaignSet({P(50, 4), P(60, 3)}), rules));
  EXPECT_FALSE(satisfies_rules(CampaignSet({P(50, 4), P(52, 5)}), rules));
  EXPECT_TRUE(satisfies_rules(CampaignSet(), rules));
}

TEST(Rules, SpanFormCatchesSharedThresholds) {
  const RuleSet rules;
  const std::vector<ThresholdDiscountPair> pairs = {P(60, 1), P(60, 2)};
  EXPECT_FALSE(satisfies_rules(pairs, rules));
}

TEST(Rules, EqualDiscountsNeedMonotoneOff) {
  RuleSet rules;
  const CampaignSet flat({P(50, 4), P(60, 4)});
  EXPECT_FALSE(satisfies_rules(flat, rules));
  rules.require_monotone_discounts = false;
  EXPECT_TRUE(satisfies_rules(flat, rules));
}

TEST(Rules, ValidateRejectsBadGrid) {
  RuleSet rules;
  rules.max_threshold = Money::from_units(5);
  EXPECT_THROW(rules.validate(), Error);
  rules = RuleSet{};
  rules.threshold_step = Money::from_cents(0);
  EXPECT_THROW(rules.validate(), Error);
}

TEST(Serialization, RoundTrips) {
  const CampaignSet menu({P(60, 5), P(70, 8)});
  EXPECT_EQ(Json(menu).get<CampaignSet>(), menu);
  RuleSet rules;
  rules.min_threshold_gap = Money::from_cents(250);
  EXPECT_EQ(Json(rules).get<RuleSet>(), rules);
  ConsumerProfile c = testing::shopper("c9", 4050, 700);
  c.gmv_90d = Money::from_cents(99);
  EXPECT_EQ(Json(c).get<ConsumerProfile>(), c);
}

TEST(Errors, ExitCodes) {
  EXPECT_EQ(exit_code_for(ErrorKind::kConfig), 2);
  EXPECT_EQ(exit_code_for(ErrorKind::kData), 3);
  EXPECT_EQ(exit_code_for(ErrorKind::kNumeric), 3);
  EXPECT_EQ(exit_code_for(ErrorKind::kRefusal), 4);
}

}  // namespace
}  // namespace dmc
