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

#include "dmc/choice_model.h"

#include <cmath>
#include <vector>

#include "dmc/error.h"
#include "dmc/keyed_rng.h"
#include "dmc/parallel.h"

namespace dmc {

void ChoiceModelParams::validate() const {
  if (!(stretch_utility_rate >= 0.0) || !(effort_cost_rate >= 0.0) ||
      !(noise_scale >= 0.0) || !std::isfinite(stretch_utility_rate) ||
      !std::isfinite(effort_cost_rate) || !std::isfinite(noise_scale)) {
    throw ConfigError("choice model rates must be finite and non-negative");
  }
}

ChoiceOutcome choice_simulate(const CampaignSet& menu,
                              const ConsumerProfile& consumer,
                              const ChoiceModelParams& params) {
  const Money base = consumer.base_spend;
  if (menu.empty()) return {base, Money()};

  const bool noisy = params.noise_scale > 0.0;
  const KeyedRng noise(params.seed,
                       fnv1a64(consumer.consumer_id.data(),
                               consumer.consumer_id.size()) ^
                           menu.fingerprint());
  // In cents, so integer amounts with dyadic rates compare exactly.
  auto utility = [&](Money spend, Money discount) {
    double u = params.stretch_utility_rate * static_cast<double>(discount.cents()) -
               params.effort_cost_rate * static_cast<double>((spend - base).cents());
    if (noisy) {
      u += 100.0 * params.noise_scale *
           noise.normal(static_cast<uint64_t>(spend.cents()));
    }
    return u;
  };

  ChoiceOutcome best{base, applied_discount(menu, base)};
  double best_utility = utility(best.spend, best.discount);
  const Money reach = base + consumer.stretch;
  for (const auto& pair : menu) {
    if (pair.threshold <= base) continue;
    if (pair.threshold > reach) break;
    // Sorted thresholds: the pair at t is the one triggered when spending t.
    const double u = utility(pair.threshold, pair.discount);
    if (u > best_utility) {
      best_utility = u;
      best = {pair.threshold, pair.discount};
    }
  }
  return best;
}

Money simulator_evaluate(const CampaignSet& menu,
                         std::span<const ConsumerProfile> population,
                         const ChoiceModelParams& params, unsigned workers) {
  std::vector<int64_t> net(population.size());
  parallel_for(population.size(), workers, [&](size_t i) {
    net[i] = choice_simulate(menu, population[i], params).net().cents();
  });
  int64_t total = 0;
  for (int64_t cents : net) total += cents;
  return Money::from_cents(total);
}

SimulatorOracle::SimulatorOracle(ChoiceModelParams params, unsigned workers)
    : params_(params), workers_(workers) {
  params_.validate();
}

Money SimulatorOracle::evaluate(
    const CampaignSet& menu, std::span<const ConsumerProfile> population) const {
  return simulator_evaluate(menu, population, params_, workers_);
}

double SimulatorOracle::evaluate_single(const ThresholdDiscountPair& target,
                                        const ConsumerProfile& consumer,
                                        const CampaignSet& menu_context) const {
  const ChoiceOutcome outcome = choice_simulate(menu_context, consumer, params_);
  const auto triggered = triggered_pair(menu_context, outcome.spend);
  return triggered && *triggered == target ? 1.0 : 0.0;
}

void to_json(Json& j, const ChoiceModelParams& params) {
  j = Json{{"stretch_utility_rate", params.stretch_utility_rate},
           {"effort_cost_rate", params.effort_cost_rate},
           {"noise_scale", params.noise_scale},
           {"seed", params.seed}};
}

void from_json(const Json& j, ChoiceModelParams& params) {
  ChoiceModelParams defaults;
  try {
    params.stretch_utility_rate =
        j.value("stretch_utility_rate", defaults.stretch_utility_rate);
    params.effort_cost_rate =
        j.value("effort_cost_rate", defaults.effort_cost_rate);
    params.noise_scale = j.value("noise_scale", defaults.noise_scale);
    params.seed = j.value("seed", defaults.seed);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("choice model params: ") + e.what());
  }
  params.validate();
}

}  // namespace dmc
