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

#include "dmc/tabular_oracle.h"

#include <cmath>
#include <limits>
#include <vector>

#include "dmc/error.h"

namespace dmc {

TabularOracle::TabularOracle(
    std::map<ThresholdDiscountPair, double> probabilities)
    : probabilities_(std::move(probabilities)) {
  for (const auto& [pair, p] : probabilities_) {
    if (!(p >= 0.0 && p < 1.0)) {
      throw DataError("tabular oracle: probability for " + pair.to_string() +
                      " must lie in [0, 1)");
    }
  }
}

TabularOracle TabularOracle::parse(const Json& document) {
  if (document.value("format", "") != "dmc-tabular") {
    throw DataError("tabular file: format must be 'dmc-tabular'");
  }
  std::map<ThresholdDiscountPair, double> table;
  try {
    for (const auto& entry : document.at("entries")) {
      const auto pair = entry.get<ThresholdDiscountPair>();
      if (!table.emplace(pair, entry.at("probability").get<double>()).second) {
        throw DataError("tabular file: duplicate entry " + pair.to_string());
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("tabular file: ") + e.what());
  }
  return TabularOracle(std::move(table));
}

TabularOracle TabularOracle::load(const std::string& path) {
  try {
    return parse(Json::parse(read_text_file(path)));
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError("tabular file '" + path + "': " + e.what());
  }
}

double TabularOracle::probability(const ThresholdDiscountPair& pair) const {
  auto it = probabilities_.find(pair);
  return it == probabilities_.end() ? 0.0 : it->second;
}

Money TabularOracle::evaluate(const CampaignSet& menu,
                              std::span<const ConsumerProfile> population) const {
  if (menu.empty() || population.empty()) return Money();
  std::vector<double> logits;
  for (const auto& pair : menu) {
    const double p = probability(pair);
    logits.push_back(p > 0.0 ? std::log(p / (1.0 - p))
                             : -std::numeric_limits<double>::infinity());
  }
  const double per_consumer = exclusive_expected_revenue(menu.pairs(), logits);
  return round_to_money(per_consumer * static_cast<double>(population.size()));
}

double TabularOracle::evaluate_single(const ThresholdDiscountPair& target,
                                      const ConsumerProfile&,
                                      const CampaignSet&) const {
  return probability(target);
}

}  // namespace dmc
