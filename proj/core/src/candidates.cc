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

#include "dmc/candidates.h"

#include <algorithm>

#include "dmc/error.h"

namespace dmc {

std::vector<ThresholdDiscountPair> CandidatePool::pairs() const {
  std::vector<ThresholdDiscountPair> out;
  out.reserve(entries.size());
  for (const auto& entry : entries) out.push_back(entry.pair);
  return out;
}

CandidatePool generate_candidates(const RuleSet& rules, size_t cap) {
  rules.validate();
  const int64_t step = rules.threshold_step.cents();
  const int64_t dstep = rules.discount_step.cents();
  // Count first so a huge grid is refused before allocating it.
  uint64_t total = 0;
  for (int64_t t = rules.min_threshold.cents(); t <= rules.max_threshold.cents();
       t += step) {
    total += static_cast<uint64_t>(t / dstep);
    if (total > cap) {
      throw RefusalError("candidate pool exceeds cap of " + std::to_string(cap) +
                         " pairs; coarsen the threshold or discount step");
    }
  }
  CandidatePool pool;
  pool.entries.reserve(total);
  for (int64_t t = rules.min_threshold.cents(); t <= rules.max_threshold.cents();
       t += step) {
    ++pool.zero_discount_skipped;
    for (int64_t d = dstep; d <= t; d += dstep) {
      pool.entries.push_back(
          {ThresholdDiscountPair::make(Money::from_cents(t), Money::from_cents(d)),
           Money()});
    }
  }
  return pool;
}

CandidatePool score_candidates(const CandidatePool& pool,
                               std::span<const ConsumerProfile> population,
                               const RevenueOracle& oracle) {
  if (pool.entries.empty()) throw DataError("cannot score an empty candidate pool");
  const Money baseline = oracle.evaluate(CampaignSet(), population);
  CandidatePool scored = pool;
  scored.sorted_by_revenue = false;
  for (auto& entry : scored.entries) {
    entry.revenue = oracle.evaluate(CampaignSet({entry.pair}), population) - baseline;
  }
  return scored;
}

bool revenue_order(const Candidate& a, const Candidate& b) {
  if (a.revenue != b.revenue) return a.revenue > b.revenue;
  if (a.pair.threshold != b.pair.threshold) {
    return a.pair.threshold < b.pair.threshold;
  }
  return a.pair.discount < b.pair.discount;
}

CandidatePool filter_by_rules(const CandidatePool& pool, const RuleSet& rules) {
  std::vector<Candidate> ranked = pool.entries;
  std::sort(ranked.begin(), ranked.end(), revenue_order);

  CandidatePool kept;
  kept.sorted_by_revenue = true;
  kept.zero_discount_skipped = pool.zero_discount_skipped;
  std::vector<ThresholdDiscountPair> accepted;
  for (const auto& entry : ranked) {
    accepted.push_back(entry.pair);
    if (satisfies_rules(accepted, rules)) {
      kept.entries.push_back(entry);
    } else {
      accepted.pop_back();
    }
  }
  return kept;
}

void to_json(Json& j, const Candidate& candidate) {
  j = Json{{"threshold_cents", candidate.pair.threshold.cents()},
           {"discount_cents", candidate.pair.discount.cents()},
           {"revenue_cents", candidate.revenue.cents()}};
}

void from_json(const Json& j, Candidate& candidate) {
  candidate.pair = j.get<ThresholdDiscountPair>();
  candidate.revenue = money_field(j, "revenue_cents");
}

void to_json(Json& j, const CandidatePool& pool) {
  j = Json{{"entries", pool.entries},
           {"sorted_by_revenue", pool.sorted_by_revenue},
           {"zero_discount_skipped", pool.zero_discount_skipped}};
}

void from_json(const Json& j, CandidatePool& pool) {
  try {
    pool.entries = j.at("entries").get<std::vector<Candidate>>();
    pool.sorted_by_revenue = j.at("sorted_by_revenue").get<bool>();
    pool.zero_discount_skipped = j.value("zero_discount_skipped", uint64_t{0});
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("candidate pool: ") + e.what());
  }
}

}  // namespace dmc
