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

#ifndef DMC_TABULAR_ORACLE_H_
#define DMC_TABULAR_ORACLE_H_

#include <map>
#include <string>

#include "dmc/oracle.h"
#include "dmc/serialization.h"

namespace dmc {

// Looks trigger probabilities up in a fixed table keyed by pair; pairs not
// in the table never trigger. Menus are valued with the same exclusive
// normalization as the neural oracle.
class TabularOracle final : public RevenueOracle {
 public:
  explicit TabularOracle(std::map<ThresholdDiscountPair, double> probabilities);

  // {"format": "dmc-tabular", "entries": [{"threshold_cents", "discount_cents",
  //   "probability"}, ...]}
  static TabularOracle load(const std::string& path);
  static TabularOracle parse(const Json& document);

  std::string name() const override { return "tabular"; }
  Money evaluate(const CampaignSet& menu,
                 std::span<const ConsumerProfile> population) const override;
  double evaluate_single(const ThresholdDiscountPair& target,
                         const ConsumerProfile& consumer,
                         const CampaignSet& menu_context) const override;

 private:
  double probability(const ThresholdDiscountPair& pair) const;

  std::map<ThresholdDiscountPair, double> probabilities_;
};

}  // namespace dmc

#endif  // DMC_TABULAR_ORACLE_H_
