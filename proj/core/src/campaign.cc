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

#include "dmc/campaign.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>

#include "dmc/error.h"

namespace dmc {

std::string Money::to_string() const {
  const int64_t magnitude = std::llabs(cents_);
  char buffer[48];
  std::snprintf(buffer, sizeof(buffer), "%s$%lld.%02lld", cents_ < 0 ? "-" : "",
                static_cast<long long>(magnitude / 100),
                static_cast<long long>(magnitude % 100));
  return buffer;
}

ThresholdDiscountPair ThresholdDiscountPair::make(Money threshold,
                                                  Money discount) {
  if (threshold.is_negative() || discount.is_negative()) {
    throw DataError("campaign amounts must be non-negative: threshold " +
                    threshold.to_string() + ", discount " +
                    discount.to_string());
  }
  if (discount > threshold) {
    throw DataError("discount " + discount.to_string() +
                    " exceeds threshold " + threshold.to_string());
  }
  return ThresholdDiscountPair{threshold, discount};
}

std::string ThresholdDiscountPair::to_string() const {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "<%.2f,%.2f>", threshold.units(),
                discount.units());
  return buffer;
}

CampaignSet::CampaignSet(std::vector<ThresholdDiscountPair> pairs)
    : pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end());
  for (size_t i = 1; i < pairs_.size(); ++i) {
    if (pairs_[i].threshold == pairs_[i - 1].threshold) {
      throw DataError("campaign set has two pairs at threshold " +
                      pairs_[i].threshold.to_string());
    }
  }
}

bool CampaignSet::contains(const ThresholdDiscountPair& pair) const {
  return std::binary_search(pairs_.begin(), pairs_.end(), pair);
}

bool CampaignSet::has_threshold(Money threshold) const {
  auto it = std::lower_bound(
      pairs_.begin(), pairs_.end(), threshold,
      [](const ThresholdDiscountPair& p, Money t) { return p.threshold < t; });
  return it != pairs_.end() && it->threshold == threshold;
}

CampaignSet CampaignSet::with(const ThresholdDiscountPair& pair) const {
  std::vector<ThresholdDiscountPair> pairs = pairs_;
  pairs.push_back(pair);
  return CampaignSet(std::move(pairs));
}

CampaignSet CampaignSet::without(const ThresholdDiscountPair& pair) const {
  CampaignSet out;
  out.pairs_.reserve(pairs_.size());
  for (const auto& p : pairs_) {
    if (p != pair) out.pairs_.push_back(p);
  }
  return out;
}

uint64_t CampaignSet::fingerprint() const {
  uint64_t hash = 0xcbf29ce484222325ULL;
  auto mix = [&hash](uint64_t value) {
    for (int byte = 0; byte < 8; ++byte) {
      hash ^= (value >> (8 * byte)) & 0xff;
      hash *= 0x100000001b3ULL;
    }
  };
  mix(pairs_.size());
  for (const auto& p : pairs_) {
    mix(static_cast<uint64_t>(p.threshold.cents()));
    mix(static_cast<uint64_t>(p.discount.cents()));
  }
  return hash;
}

std::string CampaignSet::to_string() const {
  std::string out = "{";
  for (size_t i = 0; i < pairs_.size(); ++i) {
    if (i > 0) out += ",";
    out += pairs_[i].to_string();
  }
  return out + "}";
}

void RuleSet::validate() const {
  if (min_threshold.is_negative()) {
    throw ConfigError("rules: min_threshold must be non-negative");
  }
  if (min_threshold > max_threshold) {
    throw ConfigError("rules: min_threshold exceeds max_threshold");
  }
  if (threshold_step <= Money() || discount_step <= Money()) {
    throw ConfigError("rules: threshold and discount steps must be positive");
  }
  if (min_threshold_gap <= Money()) {
    throw ConfigError("rules: min_threshold_gap must be positive");
  }
}

std::optional<ThresholdDiscountPair> triggered_pair(const CampaignSet& set,
                                                    Money basket) {
  const auto pairs = set.pairs();
  auto it = std::upper_bound(
      pairs.begin(), pairs.end(), basket,
      [](Money b, const ThresholdDiscountPair& p) { return b < p.threshold; });
  if (it == pairs.begin()) return std::nullopt;
  return *std::prev(it);
}

Money applied_discount(const CampaignSet& set, Money basket) {
  const auto pair = triggered_pair(set, basket);
  return pair ? pair->discount : Money();
}

bool satisfies_rules(std::span<const ThresholdDiscountPair> pairs,
                     const RuleSet& rules) {
  std::vector<ThresholdDiscountPair> sorted(pairs.begin(), pairs.end());
  std::sort(sorted.begin(), sorted.end());
  for (size_t i = 1; i < sorted.size(); ++i) {
    const auto& lo = sorted[i - 1];
    const auto& hi = sorted[i];
    if (hi.threshold == lo.threshold) return false;
    if (hi.threshold - lo.threshold < rules.min_threshold_gap) return false;
    if (rules.require_monotone_discounts && hi.discount <= lo.discount) {
      return false;
    }
  }
  return true;
}

bool satisfies_rules(const CampaignSet& set, const RuleSet& rules) {
  return satisfies_rules(set.pairs(), rules);
}

}  // namespace dmc
