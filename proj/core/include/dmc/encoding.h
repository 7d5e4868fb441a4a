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

#ifndef DMC_ENCODING_H_
#define DMC_ENCODING_H_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "dmc/campaign.h"
#include "dmc/consumer.h"
#include "dmc/serialization.h"

namespace dmc {

// Thermometer code of fixed length: the first `ones` positions are 1, the
// rest 0. Stored as (length, ones); a 1 can never follow a 0.
class IsotonicVector {
 public:
  IsotonicVector(size_t length, size_t ones);

  size_t length() const { return length_; }
  size_t popcount() const { return ones_; }
  bool operator[](size_t i) const { return i < ones_; }

  std::vector<uint8_t> bits() const;

  bool operator==(const IsotonicVector&) const = default;

 private:
  size_t length_;
  size_t ones_;
};

// bits[i] = 1 iff i < floor(value / unit), clamped at `length`. Values past
// the end are clamped silently and counted in isotonic_clamp_count().
IsotonicVector isotonic_encode(Money value, Money unit = Money::from_units(1),
                               size_t length = 500);
uint64_t isotonic_clamp_count();

inline constexpr size_t kDenseFeatureCount = 9;

// Dense slots, in order.
enum DenseSlot : size_t {
  kOrderDate = 0,
  kShopBucket,
  kCityBucket,
  kCustomerBucket,
  kGmv30,
  kGmv60,
  kGmv90,
  kTargetThreshold,
  kTargetDiscount,
};

// Everything feature assembly needs besides the raw inputs. Serialized
// inside the scorer weight file so scorer and trainer cannot drift.
struct FeatureConfig {
  Money encoding_unit = Money::from_units(1);
  size_t encoding_length = 500;
  uint64_t hash_buckets = 64;
  // shop category, age bucket, gender
  std::array<size_t, 3> sparse_cardinalities = {8, 8, 3};
  std::array<double, kDenseFeatureCount> dense_mean{};
  std::array<double, kDenseFeatureCount> dense_scale = {1, 1, 1, 1, 1,
                                                        1, 1, 1, 1};

  size_t sparse_width() const;
  void validate() const;

  bool operator==(const FeatureConfig&) const = default;
};

struct CalendarDate {
  int year = 2020;
  unsigned month = 1;
  unsigned day = 1;

  // "YYYY-MM-DD"; config error when malformed or not a real date.
  static CalendarDate parse(const std::string& text);
  int day_of_year() const;
  std::string to_string() const;

  bool operator==(const CalendarDate&) const = default;
};

struct FeatureBundle {
  std::array<double, kDenseFeatureCount> dense{};  // standardized
  std::vector<uint8_t> sparse_onehot;
  ThresholdDiscountPair target;
  std::vector<ThresholdDiscountPair> not_target;  // ascending threshold

  bool operator==(const FeatureBundle&) const = default;
};

// Stable id bucket: FNV-1a 64 of the id, modulo `buckets`.
uint64_t hash_bucket(const std::string& id, uint64_t buckets);

// Builds the scorer input for `target` shown inside `menu`. Data error if
// the target is not on the menu or a category is out of range.
FeatureBundle assemble_features(const ConsumerProfile& consumer,
                                const ShopContext& shop,
                                const ThresholdDiscountPair& target,
                                const CampaignSet& menu, CalendarDate as_of,
                                const FeatureConfig& config);

void to_json(Json& j, const FeatureBundle& bundle);
void from_json(const Json& j, FeatureBundle& bundle);
void to_json(Json& j, const FeatureConfig& config);
void from_json(const Json& j, FeatureConfig& config);

}  // namespace dmc

#endif  // DMC_ENCODING_H_
