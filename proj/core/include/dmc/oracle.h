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

#ifndef DMC_ORACLE_H_
#define DMC_ORACLE_H_

#include <span>
#include <string>
#include <vector>

#include "dmc/campaign.h"
#include "dmc/consumer.h"

namespace dmc {

// The set function being maximized: expected net revenue of a campaign menu
// over a consumer population. Implementations are immutable after
// construction and deterministic in their inputs, whatever the worker count.
class RevenueOracle {
 public:
  virtual ~RevenueOracle() = default;

  // Identifier recorded in result files, e.g. "sim" or "neural".
  virtual std::string name() const = 0;

  virtual Money evaluate(const CampaignSet& menu,
                         std::span<const ConsumerProfile> population) const = 0;

  // Per-consumer score of one pair shown within `menu_context` (which
  // contains the target).
  virtual double evaluate_single(const ThresholdDiscountPair& target,
                                 const ConsumerProfile& consumer,
                                 const CampaignSet& menu_context) const = 0;
};

// Expected per-consumer net revenue when each pair's trigger odds compete
// with a no-trigger outcome of logit 0:
//   P(p) = exp(l_p) / (1 + sum_q exp(l_q)),   revenue = sum_p P(p) (T_p - D_p).
// For a single pair with score s this reduces to s (T - D).
double exclusive_expected_revenue(std::span<const ThresholdDiscountPair> pairs,
                                  std::span<const double> logits);

// Rounds a real amount of cents to Money (half away from zero).
Money round_to_money(double cents);

}  // namespace dmc

#endif  // DMC_ORACLE_H_
