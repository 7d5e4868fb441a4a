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

#include "dmc/encoding.h"
#include "dmc/error.h"
#include "dmc/keyed_rng.h"
#include "dmc/scorer_weights.h"
#include "test_support.h"

namespace dmc {
namespace {

using testing::P;

std::vector<uint8_t> leading_ones(size_t ones, size_t length = 500) {
  std::vector<uint8_t> bits(length, 0);
  std::fill(bits.begin(), bits.begin() + ones, 1);
  return bits;
}

TEST(Isotonic, TenDollars) {
  const auto v = isotonic_encode(Money::from_units(10));
  EXPECT_EQ(v.bits(), leading_ones(10));
  EXPECT_TRUE(v[9]);
  EXPECT_FALSE(v[10]);
}

TEST(Isotonic, FiveDollars) {
  EXPECT_EQ(isotonic_encode(Money::from_units(5)).bits(), leading_ones(5));
}

TEST(Isotonic, ZeroAndClamp) {
  EXPECT_EQ(isotonic_encode(Money::from_units(0)).popcount(), 0u);
  const uint64_t before = isotonic_clamp_count();
  EXPECT_EQ(isotonic_encode(Money::from_units(600)).bits(), leading_ones(500));
  EXPECT_EQ(isotonic_clamp_count(), before + 1);
  EXPECT_EQ(isotonic_encode(Money::from_units(500)).popcount(), 500u);
}

TEST(Isotonic, FractionalAmountsFloor) {
  EXPECT_EQ(isotonic_encode(Money::from_cents(1099)).popcount(), 10u);
  EXPECT_EQ(isotonic_encode(Money::from_cents(99)).popcount(), 0u);
  EXPECT_EQ(isotonic_encode(Money::from_cents(1250), Money::from_cents(50), 40).popcount(),
            25u);
}

TEST(Isotonic, PopcountProperty) {
  RngStream rng(2020, 1);
  for (int i = 0; i < 10000; ++i) {
    const int64_t unit = 1 + static_cast<int64_t>(rng.below(500));
    const size_t length = 1 + rng.below(800);
    const int64_t value = static_cast<int64_t>(rng.below(200000));
    const auto v = isotonic_encode(Money::from_cents(value), Money::from_cents(unit), length);
    const size_t expected = std::min<size_t>(static_cast<size_t>(value / unit), length);
    ASSERT_EQ(v.popcount(), expected);
    const auto bits = v.bits();
    ASSERT_EQ(bits.size(), length);
    ASSERT_EQ(static_cast<size_t>(std::count(bits.begin(), bits.end(), 1)), expected);
    ASSERT_TRUE(std::is_sorted(bits.rbegin(), bits.rend()));
  }
}

TEST(Isotonic, RejectsNegativeValue) {
  EXPECT_THROW(isotonic_encode(Money::from_cents(-1)), Error);
}

TEST(CalendarDate, ParseAndDayOfYear) {
  EXPECT_EQ(CalendarDate::parse("2020-04-24").day_of_year(), 115);
  EXPECT_EQ(CalendarDate::parse("2021-12-31").day_of_year(), 365);
  EXPECT_EQ(CalendarDate::parse("2020-12-31").day_of_year(), 366);
  EXPECT_EQ(CalendarDate::parse("2020-03-01").to_string(), "2020-03-01");
  EXPECT_THROW(CalendarDate::parse("2021-02-29"), Error);
  EXPECT_THROW(CalendarDate::parse("20-1-1"), Error);
}

FeatureConfig plain_features() {
  FeatureConfig config;
  return config;
}

TEST(Assemble, NotTargetIsMenuMinusTarget) {
  const ConsumerProfile c = testing::shopper("c1", 3000, 500);
  const CampaignSet menu({P(20, 1), P(30, 2), P(40, 4)});
  const auto bundle = assemble_features(c, ShopContext{}, P(30, 2), menu,
                                        CalendarDate{}, plain_features());
  EXPECT_EQ(bundle.target, P(30, 2));
  EXPECT_EQ(bundle.not_target, (std::vector{P(20, 1), P(40, 4)}));

  const CampaignSet single({P(20, 1)});
  EXPECT_TRUE(assemble_features(c, ShopContext{}, P(20, 1), single, CalendarDate{},
                                plain_features())
                  .not_target.empty());
}

TEST(Assemble, RejectsTargetOffMenuAndBadCategory) {
  ConsumerProfile c = testing::shopper("c1", 3000, 500);
  const CampaignSet menu({P(20, 1)});
  EXPECT_THROW(assemble_features(c, ShopContext{}, P(30, 2), menu, CalendarDate{},
                                 plain_features()),
               Error);
  c.gender = 3;
  EXPECT_THROW(assemble_features(c, ShopContext{}, P(20, 1), menu, CalendarDate{},
                                 plain_features()),
               Error);
}

TEST(Assemble, OneHotLayout) {
  ConsumerProfile c = testing::shopper("c1", 3000, 500);
  c.age_bucket = 7;
  c.gender = 1;
  ShopContext shop;
  shop.shop_category = 2;
  const CampaignSet menu({P(20, 1)});
  const auto bundle =
      assemble_features(c, shop, P(20, 1), menu, CalendarDate{}, plain_features());
  std::vector<uint8_t> expected(19, 0);
  expected[2] = 1;
  expected[8 + 7] = 1;
  expected[16 + 1] = 1;
  EXPECT_EQ(bundle.sparse_onehot, expected);
  EXPECT_DOUBLE_EQ(bundle.dense[kTargetThreshold], 20.0);
  EXPECT_DOUBLE_EQ(bundle.dense[kOrderDate], 1.0);
}

// Golden produced by the independent assembler in tests/conformance.
TEST(Assemble, MatchesGoldenBundle) {
  const Json golden = Json::parse(read_text_file(testing::fixture("scorer/golden_bundle.json")));
  const ScorerWeights weights =
      load_scorer_weights(testing::fixture("scorer/scorer_weights.json"));
  const auto consumer = golden.at("consumer").get<ConsumerProfile>();
  const auto shop = golden.at("shop").get<ShopContext>();
  const auto menu = golden.at("menu").get<CampaignSet>();
  const auto target = golden.at("target").get<ThresholdDiscountPair>();
  const auto as_of = CalendarDate::parse(golden.at("as_of").get<std::string>());
  const auto expected = golden.at("bundle").get<FeatureBundle>();

  const auto bundle = assemble_features(consumer, shop, target, menu, as_of, weights.features);
  EXPECT_EQ(bundle.sparse_onehot, expected.sparse_onehot);
  EXPECT_EQ(bundle.target, expected.target);
  EXPECT_EQ(bundle.not_target, expected.not_target);
  for (size_t i = 0; i < kDenseFeatureCount; ++i) {
    EXPECT_NEAR(bundle.dense[i], expected.dense[i], 1e-12) << "dense slot " << i;
  }
}

TEST(FeatureBundle, JsonRoundTrip) {
  FeatureBundle bundle;
  bundle.dense = {0.25, -1.5, 3, 0, 0, 0, 0, 1e-17, 2};
  bundle.sparse_onehot = {0, 1, 0};
  bundle.target = P(30, 2);
  bundle.not_target = {P(20, 1)};
  EXPECT_EQ(Json(bundle).get<FeatureBundle>(), bundle);
}

TEST(HashBucket, StableFnvModulo) {
  EXPECT_EQ(hash_bucket("a", 64), 0xaf63dc4c8601ec8cull % 64);
  EXPECT_LT(hash_bucket("shop-17", 64), 64u);
}

}  // namespace
}  // namespace dmc
