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

#ifndef DMC_CAMPAIGN_H_
#define DMC_CAMPAIGN_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dmc/money.h"

namespace dmc {

// Spend at least `threshold` (gross), save `discount`.
struct ThresholdDiscountPair {
  Money threshold;
  Money discount;

  // Throws a data error unless 0 <= discount <= threshold.
  static ThresholdDiscountPair make(Money threshold, Money discount);

  Money net() const { return threshold - discount; }

  auto operator<=>(const ThresholdDiscountPair&) const = default;

  // "<39.00,3.00>"
  std::string to_string() const;
};

// One shop's campaign menu. Pairs are kept sorted by strictly increasing
// threshold; at most one pair per threshold.
class CampaignSet {
 public:
  CampaignSet() = default;

  // Sorts the pairs; throws a data error if two share a threshold.
  explicit CampaignSet(std::vector<ThresholdDiscountPair> pairs);

  std::span<const ThresholdDiscountPair> pairs() const { return pairs_; }
  size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }

  bool contains(const ThresholdDiscountPair& pair) const;
  bool has_threshold(Money threshold) const;

  // Copies with one pair added or removed. `with` throws on a threshold clash.
  CampaignSet with(const ThresholdDiscountPair& pair) const;
  CampaignSet without(const ThresholdDiscountPair& pair) const;

  // FNV-1a over the (threshold, discount) cents sequence. Stable across runs.
  uint64_t fingerprint() const;

  std::string to_string() const;

  bool operator==(const CampaignSet&) const = default;

  auto begin() const { return pairs_.begin(); }
  auto end() const { return pairs_.end(); }

 private:
  std::vector<ThresholdDiscountPair> pairs_;
};

// Business rules every recommended menu has to satisfy.
struct RuleSet {
  Money min_threshold = Money::from_units(10);
  Money max_threshold = Money::from_units(100);
  Money threshold_step = Money::from_units(1);
  Money discount_step = Money::from_units(1);
  Money min_threshold_gap = Money::from_units(5);
  bool require_monotone_discounts = true;

  // Throws a config error when the invariants do not hold.
  void validate() const;

  bool operator==(const RuleSet&) const = default;
};

// The pair a basket of value `basket` triggers: the one with the largest
// threshold not above the basket, or nothing when no threshold is met.
std::optional<ThresholdDiscountPair> triggered_pair(const CampaignSet& set,
                                                    Money basket);

// Discount applied to a basket under `set` (zero when nothing triggers).
Money applied_discount(const CampaignSet& set, Money basket);

// True iff thresholds are distinct, adjacent thresholds are at least
// `min_threshold_gap` apart and, when required, discounts strictly increase
// with threshold.
bool satisfies_rules(std::span<const ThresholdDiscountPair> pairs,
                     const RuleSet& rules);
bool satisfies_rules(const CampaignSet& set, const RuleSet& rules);

}  // namespace dmc

#endif  // DMC_CAMPAIGN_H_
