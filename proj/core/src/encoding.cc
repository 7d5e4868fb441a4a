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

#include "dmc/encoding.h"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "dmc/error.h"
#include "dmc/keyed_rng.h"

namespace dmc {
namespace {

std::atomic<uint64_t> clamp_counter{0};

}  // namespace

IsotonicVector::IsotonicVector(size_t length, size_t ones)
    : length_(length), ones_(ones < length ? ones : length) {}

std::vector<uint8_t> IsotonicVector::bits() const {
  std::vector<uint8_t> out(length_, 0);
  for (size_t i = 0; i < ones_; ++i) out[i] = 1;
  return out;
}

IsotonicVector isotonic_encode(Money value, Money unit, size_t length) {
  if (unit <= Money() || length == 0) {
    throw ConfigError("isotonic encoding needs a positive unit and length");
  }
  if (value.is_negative()) {
    throw DataError("cannot isotonic-encode negative amount " +
                    value.to_string());
  }
  const uint64_t steps =
      static_cast<uint64_t>(value.cents()) / static_cast<uint64_t>(unit.cents());
  if (steps > length) {
    clamp_counter.fetch_add(1, std::memory_order_relaxed);
    return IsotonicVector(length, length);
  }
  return IsotonicVector(length, steps);
}

uint64_t isotonic_clamp_count() {
  return clamp_counter.load(std::memory_order_relaxed);
}

size_t FeatureConfig::sparse_width() const {
  return sparse_cardinalities[0] + sparse_cardinalities[1] +
         sparse_cardinalities[2];
}

void FeatureConfig::validate() const {
  if (encoding_unit <= Money() || encoding_length == 0) {
    throw ConfigError("feature config: encoding unit and length must be positive");
  }
  if (hash_buckets == 0) throw ConfigError("feature config: zero hash buckets");
  for (size_t c : sparse_cardinalities) {
    if (c == 0) throw ConfigError("feature config: zero sparse cardinality");
  }
  for (size_t i = 0; i < kDenseFeatureCount; ++i) {
    if (!std::isfinite(dense_mean[i]) || !std::isfinite(dense_scale[i]) ||
        dense_scale[i] <= 0.0) {
      throw ConfigError("feature config: bad standardization for dense slot " +
                        std::to_string(i));
    }
  }
}

CalendarDate CalendarDate::parse(const std::string& text) {
  int year = 0;
  unsigned month = 0, day = 0;
  char tail = 0;
  if (text.size() != 10 ||
      std::sscanf(text.c_str(), "%4d-%2u-%2u%c", &year, &month, &day, &tail) !=
          3) {
    throw ConfigError("date must be YYYY-MM-DD, got '" + text + "'");
  }
  const std::chrono::year_month_day ymd{std::chrono::year{year},
                                        std::chrono::month{month},
                                        std::chrono::day{day}};
  if (!ymd.ok()) throw ConfigError("not a calendar date: '" + text + "'");
  return CalendarDate{year, month, day};
}

int CalendarDate::day_of_year() const {
  using namespace std::chrono;
  const sys_days date = year_month_day{std::chrono::year{year},
                                       std::chrono::month{month},
                                       std::chrono::day{day}};
  const sys_days jan1 = year_month_day{std::chrono::year{year}, January, 1d};
  return static_cast<int>((date - jan1).count()) + 1;
}

std::string CalendarDate::to_string() const {
  char buffer[16];
  std::snprintf(buffer, sizeof(buffer), "%04d-%02u-%02u", year, month, day);
  return buffer;
}

uint64_t hash_bucket(const std::string& id, uint64_t buckets) {
  return fnv1a64(id.data(), id.size()) % buckets;
}

FeatureBundle assemble_features(const ConsumerProfile& consumer,
                                const ShopContext& shop,
                                const ThresholdDiscountPair& target,
                                const CampaignSet& menu, CalendarDate as_of,
                                const FeatureConfig& config) {
  if (!menu.contains(target)) {
    throw DataError("target " + target.to_string() + " is not on menu " +
                    menu.to_string());
  }
  const std::array<int, 3> categories = {shop.shop_category,
                                         consumer.age_bucket, consumer.gender};
  static constexpr const char* kNames[] = {"shop_category", "age_bucket",
                                           "gender"};
  for (size_t k = 0; k < 3; ++k) {
    if (categories[k] < 0 ||
        static_cast<size_t>(categories[k]) >= config.sparse_cardinalities[k]) {
      throw DataError(std::string(kNames[k]) + " " +
                      std::to_string(categories[k]) + " out of range for '" +
                      consumer.consumer_id + "'");
    }
  }

  const std::array<double, kDenseFeatureCount> raw = {
      static_cast<double>(as_of.day_of_year()),
      static_cast<double>(hash_bucket(shop.shop_id, config.hash_buckets)),
      static_cast<double>(hash_bucket(shop.city_id, config.hash_buckets)),
      static_cast<double>(hash_bucket(consumer.consumer_id, config.hash_buckets)),
      consumer.gmv_30d.units(),
      consumer.gmv_60d.units(),
      consumer.gmv_90d.units(),
      target.threshold.units(),
      target.discount.units(),
  };

  FeatureBundle bundle;
  for (size_t i = 0; i < kDenseFeatureCount; ++i) {
    bundle.dense[i] = (raw[i] - config.dense_mean[i]) / config.dense_scale[i];
  }
  bundle.sparse_onehot.assign(config.sparse_width(), 0);
  size_t offset = 0;
  for (size_t k = 0; k < 3; ++k) {
    bundle.sparse_onehot[offset + static_cast<size_t>(categories[k])] = 1;
    offset += config.sparse_cardinalities[k];
  }
  bundle.target = target;
  for (const auto& pair : menu) {
    if (pair != target) bundle.not_target.push_back(pair);
  }
  return bundle;
}

void to_json(Json& j, const FeatureBundle& bundle) {
  j = Json{{"dense", bundle.dense},
           {"sparse_onehot", bundle.sparse_onehot},
           {"target", bundle.target},
           {"not_target", bundle.not_target}};
}

void from_json(const Json& j, FeatureBundle& bundle) {
  try {
    const auto dense = j.at("dense").get<std::vector<double>>();
    if (dense.size() != kDenseFeatureCount) {
      throw DataError("feature bundle: dense must have 9 entries");
    }
    std::copy(dense.begin(), dense.end(), bundle.dense.begin());
    bundle.sparse_onehot = j.at("sparse_onehot").get<std::vector<uint8_t>>();
    bundle.target = j.at("target").get<ThresholdDiscountPair>();
    bundle.not_target =
        j.at("not_target").get<std::vector<ThresholdDiscountPair>>();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("feature bundle: ") + e.what());
  }
}

void to_json(Json& j, const FeatureConfig& config) {
  j = Json{{"encoding_unit_cents", config.encoding_unit.cents()},
           {"encoding_length", config.encoding_length},
           {"hash_buckets", config.hash_buckets},
           {"sparse_cardinalities", config.sparse_cardinalities},
           {"dense_mean", config.dense_mean},
           {"dense_scale", config.dense_scale}};
}

void from_json(const Json& j, FeatureConfig& config) {
  try {
    config.encoding_unit = money_field(j, "encoding_unit_cents");
    config.encoding_length = j.at("encoding_length").get<size_t>();
    config.hash_buckets = j.at("hash_buckets").get<uint64_t>();
    const auto cards = j.at("sparse_cardinalities").get<std::vector<size_t>>();
    const auto mean = j.at("dense_mean").get<std::vector<double>>();
    const auto scale = j.at("dense_scale").get<std::vector<double>>();
    if (cards.size() != 3 || mean.size() != kDenseFeatureCount ||
        scale.size() != kDenseFeatureCount) {
      throw DataError("feature config: wrong vector lengths");
    }
    std::copy(cards.begin(), cards.end(), config.sparse_cardinalities.begin());
    std::copy(mean.begin(), mean.end(), config.dense_mean.begin());
    std::copy(scale.begin(), scale.end(), config.dense_scale.begin());
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("feature config: ") + e.what());
  }
  config.validate();
}

}  // namespace dmc
