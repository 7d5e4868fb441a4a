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

#ifndef DMC_CHOICE_MODEL_H_
#define DMC_CHOICE_MODEL_H_

#include <cstdint>
#include <span>

#include "dmc/campaign.h"
#include "dmc/consumer.h"
#include "dmc/oracle.h"
#include "dmc/serialization.h"

namespace dmc {

// Ground-truth consumer response model. Utilities are in currency units.
struct ChoiceModelParams {
  double stretch_utility_rate = 1.0;  // utility per unit of discount
  double effort_cost_rate = 0.25;     // disutility per unit of extra spend
  double noise_scale = 0.0;           // std-dev of per-option utility noise
  uint64_t seed = 0;

  void validate() const;
  bool operator==(const ChoiceModelParams&) const = default;
};

struct ChoiceOutcome {
  Money spend;     // gross basket
  Money discount;  // applied discount

  Money net() const { return spend - discount; }
  bool operator==(const ChoiceOutcome&) const = default;
};

// The consumer either buys their base basket (taking whatever triggers) or
// stretches to a menu threshold t with base < t <= base + stretch, picking
// the option of highest utility
//   rate_u * discount - rate_e * (spend - base) + noise.
// Ties go to the smaller spend.
ChoiceOutcome choice_simulate(const CampaignSet& menu,
                              const ConsumerProfile& consumer,
                              const ChoiceModelParams& params);

// Sum of net revenue over the population. Noise is keyed on
// (seed, consumer id, menu fingerprint, option spend).
Money simulator_evaluate(const CampaignSet& menu,
                         std::span<const ConsumerProfile> population,
                         const ChoiceModelParams& params, unsigned workers = 1);

class SimulatorOracle final : public RevenueOracle {
 public:
  explicit SimulatorOracle(ChoiceModelParams params, unsigned workers = 1);

  std::string name() const override { return "sim"; }
  Money evaluate(const CampaignSet& menu,
                 std::span<const ConsumerProfile> population) const override;
  // 1 if the consumer's choice under `menu_context` triggers `target`, else 0.
  double evaluate_single(const ThresholdDiscountPair& target,
                         const ConsumerProfile& consumer,
                         const CampaignSet& menu_context) const override;

  const ChoiceModelParams& params() const { return params_; }

 private:
  ChoiceModelParams params_;
  unsigned workers_;
};

void to_json(Json& j, const ChoiceModelParams& params);
void from_json(const Json& j, ChoiceModelParams& params);

}  // namespace dmc

#endif  // DMC_CHOICE_MODEL_H_
