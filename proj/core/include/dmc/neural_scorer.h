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

#ifndef DMC_NEURAL_SCORER_H_
#define DMC_NEURAL_SCORER_H_

#include <span>
#include <string>
#include <vector>

#include "dmc/encoding.h"
#include "dmc/oracle.h"
#include "dmc/scorer_weights.h"

namespace dmc {

// Pre-sigmoid output of the scorer. Numeric error on a dimension mismatch
// (naming the layer) or a non-finite activation.
double neural_logit(const FeatureBundle& bundle, const ScorerWeights& weights);

// Probability that the consumer triggers the bundle's target pair.
double neural_score(const FeatureBundle& bundle, const ScorerWeights& weights);

// Element-wise product joint * threshold_gate * discount_gate.
std::vector<double> apply_gates(std::span<const double> joint,
                                std::span<const uint8_t> threshold_gate,
                                std::span<const uint8_t> discount_gate);

// Embedding of one campaign pair through pair_proj (500 wide).
std::vector<double> embed_pair(const ThresholdDiscountPair& pair,
                               const ScorerWeights& weights);

// Attention-pooled context of the not-target pairs; the stored default
// context when there are none.
std::vector<double> pool_context(
    std::span<const ThresholdDiscountPair> not_target,
    const ScorerWeights& weights);

struct NeuralContext {
  ShopContext shop;
  CalendarDate as_of;
};

// Expected net revenue of `menu`: per consumer, the trigger logits of all
// menu pairs compete with a no-trigger logit of 0 (see
// exclusive_expected_revenue); summed over consumers in order and rounded.
Money neural_evaluate(const CampaignSet& menu,
                      std::span<const ConsumerProfile> population,
                      const ScorerWeights& weights, const NeuralContext& context,
                      unsigned workers = 1);

class NeuralOracle final : public RevenueOracle {
 public:
  NeuralOracle(ScorerWeights weights, NeuralContext context,
               unsigned workers = 1);

  std::string name() const override { return "neural"; }
  Money evaluate(const CampaignSet& menu,
                 std::span<const ConsumerProfile> population) const override;
  double evaluate_single(const ThresholdDiscountPair& target,
                         const ConsumerProfile& consumer,
                         const CampaignSet& menu_context) const override;

  const ScorerWeights& weights() const { return weights_; }

 private:
  ScorerWeights weights_;
  NeuralContext context_;
  unsigned workers_;
};

}  // namespace dmc

#endif  // DMC_NEURAL_SCORER_H_
