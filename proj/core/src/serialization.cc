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

#include "dmc/serialization.h"

#include <fstream>
#include <sstream>

#include "dmc/error.h"

namespace dmc {
namespace {

template <typename T>
T field(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw DataError(std::string("missing field '") + key + "'");
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception&) {
    throw DataError(std::string("field '") + key + "' has the wrong type");
  }
}

template <typename T>
T field_or(const Json& j, const char* key, T fallback) {
  return j.contains(key) ? field<T>(j, key) : fallback;
}

}  // namespace

Money money_field(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw DataError(std::string("missing field '") + key + "'");
  if (!it->is_number_integer()) {
    throw DataError(std::string("field '") + key + "' must be integer cents");
  }
  return Money::from_cents(it->get<int64_t>());
}

void to_json(Json& j, const ThresholdDiscountPair& pair) {
  j = Json{{"threshold_cents", pair.threshold.cents()},
           {"discount_cents", pair.discount.cents()}};
}

void from_json(const Json& j, ThresholdDiscountPair& pair) {
  if (!j.is_object()) throw DataError("campaign pair must be an object");
  pair = ThresholdDiscountPair::make(money_field(j, "threshold_cents"),
                                     money_field(j, "discount_cents"));
}

void to_json(Json& j, const CampaignSet& set) {
  j = Json::array();
  for (const auto& pair : set) j.push_back(pair);
}

void from_json(const Json& j, CampaignSet& set) {
  if (!j.is_array()) throw DataError("campaign set must be an array");
  std::vector<ThresholdDiscountPair> pairs;
  for (const auto& item : j) pairs.push_back(item.get<ThresholdDiscountPair>());
  set = CampaignSet(std::move(pairs));
}

void to_json(Json& j, const RuleSet& rules) {
  j = Json{{"min_threshold_cents", rules.min_threshold.cents()},
           {"max_threshold_cents", rules.max_threshold.cents()},
           {"threshold_step_cents", rules.threshold_step.cents()},
           {"discount_step_cents", rules.discount_step.cents()},
           {"min_threshold_gap_cents", rules.min_threshold_gap.cents()},
           {"require_monotone_discounts", rules.require_monotone_discounts}};
}

void from_json(const Json& j, RuleSet& rules) {
  if (!j.is_object()) throw ConfigError("rules must be an object");
  RuleSet defaults;
  auto money_or = [&j](const char* key, Money fallback) {
    return j.contains(key) ? money_field(j, key) : fallback;
  };
  rules.min_threshold = money_or("min_threshold_cents", defaults.min_threshold);
  rules.max_threshold = money_or("max_threshold_cents", defaults.max_threshold);
  rules.threshold_step = money_or("threshold_step_cents", defaults.threshold_step);
  rules.discount_step = money_or("discount_step_cents", defaults.discount_step);
  rules.min_threshold_gap =
      money_or("min_threshold_gap_cents", defaults.min_threshold_gap);
  rules.require_monotone_discounts = field_or<bool>(
      j, "require_monotone_discounts", defaults.require_monotone_discounts);
  rules.validate();
}

void to_json(Json& j, const ConsumerProfile& c) {
  j = Json{{"consumer_id", c.consumer_id},
           {"base_spend_cents", c.base_spend.cents()},
           {"stretch_cents", c.stretch.cents()},
           {"age_bucket", c.age_bucket},
           {"gender", c.gender},
           {"shop_category", c.shop_category},
           {"gmv_30d_cents", c.gmv_30d.cents()},
           {"gmv_60d_cents", c.gmv_60d.cents()},
           {"gmv_90d_cents", c.gmv_90d.cents()},
           {"distance_to_shop_m", c.distance_to_shop_m}};
}

void from_json(const Json& j, ConsumerProfile& c) {
  if (!j.is_object()) throw DataError("consumer record must be an object");
  c.consumer_id = field<std::string>(j, "consumer_id");
  c.base_spend = money_field(j, "base_spend_cents");
  c.stretch = money_field(j, "stretch_cents");
  c.age_bucket = field<int>(j, "age_bucket");
  c.gender = field<int>(j, "gender");
  c.shop_category = field<int>(j, "shop_category");
  c.gmv_30d = money_field(j, "gmv_30d_cents");
  c.gmv_60d = money_field(j, "gmv_60d_cents");
  c.gmv_90d = money_field(j, "gmv_90d_cents");
  c.distance_to_shop_m = field<double>(j, "distance_to_shop_m");
  c.validate();
}

void to_json(Json& j, const ShopContext& shop) {
  j = Json{{"shop_id", shop.shop_id},
           {"city_id", shop.city_id},
           {"shop_category", shop.shop_category}};
}

void from_json(const Json& j, ShopContext& shop) {
  ShopContext defaults;
  shop.shop_id = field_or<std::string>(j, "shop_id", defaults.shop_id);
  shop.city_id = field_or<std::string>(j, "city_id", defaults.city_id);
  shop.shop_category = field_or<int>(j, "shop_category", defaults.shop_category);
}

std::string canonical_line(const Json& j) { return j.dump(); }

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw DataError("failed writing '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace dmc
