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

#ifndef DMC_CANDIDATES_H_
#define DMC_CANDIDATES_H_

#include <cstdint>
#include <span>
#include <vector>

#include "dmc/campaign.h"
#include "dmc/consumer.h"
#include "dmc/oracle.h"
#include "dmc/serialization.h"

namespace dmc {

struct Candidate {
  ThresholdDiscountPair pair;
  Money revenue;  // marginal over the empty menu once scored

  bool operator==(const Candidate&) const = default;
};

struct CandidatePool {
  std::vector<Candidate> entries;
  bool sorted_by_revenue = false;
  // Zero-discount pairs seen during generation but left out (they are no-ops).
  uint64_t zero_discount_skipped = 0;

  std::vector<ThresholdDiscountPair> pairs() const;
  bool operator==(const CandidatePool&) const = default;
};

inline constexpr size_t kDefaultPoolCap = 50000;

// Every <threshold, discount> on the rule grid: thresholds min, min+step,
// ..., max; discounts step_d, 2 step_d, ... up to the threshold. Refusal
// error when the pool would exceed `cap` entries.
CandidatePool generate_candidates(const RuleSet& rules,
                                  size_t cap = kDefaultPoolCap);

// Sets each entry's revenue to f({pair}) - f(empty) under `oracle`. Input
// order is kept. Data error on an empty pool.
CandidatePool score_candidates(const CandidatePool& pool,
                               std::span<const ConsumerProfile> population,
                               const RevenueOracle& oracle);

// Revenue-descending scan (ties: lower threshold, then lower discount) that
// keeps an entry iff the kept entries plus it still satisfy the rules.
// Output is in acceptance order.
CandidatePool filter_by_rules(const CandidatePool& pool, const RuleSet& rules);

// Total order used for ranking candidates everywhere.
bool revenue_order(const Candidate& a, const Candidate& b);

void to_json(Json& j, const Candidate& candidate);
void from_json(const Json& j, Candidate& candidate);
void to_json(Json& j, const CandidatePool& pool);
void from_json(const Json& j, CandidatePool& pool);

}  // namespace dmc

#endif  // DMC_CANDIDATES_H_
