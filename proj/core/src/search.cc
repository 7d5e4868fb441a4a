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

#include "dmc/search.h"

#include <algorithm>
#include <chrono>
#include <functional>
#include <sstream>

#include "dmc/error.h"
#include "dmc/keyed_rng.h"

namespace dmc {
namespace {

constexpr uint64_t kUsmStream = 0x75736d;  // "usm"

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

const char* branch_name(UsmBranch branch) {
  return branch == UsmBranch::kAdd ? "add" : "drop";
}

}  // namespace

SetObjective::SetObjective(std::span<const ThresholdDiscountPair> ground,
                           std::span<const ConsumerProfile> population,
                           const RevenueOracle& oracle)
    : ground_(ground), population_(population), oracle_(oracle) {}

CampaignSet SetObjective::set_of(const std::vector<uint8_t>& members) const {
  std::vector<ThresholdDiscountPair> pairs;
  for (size_t i = 0; i < ground_.size(); ++i) {
    if (members[i]) pairs.push_back(ground_[i]);
  }
  return CampaignSet(std::move(pairs));
}

CampaignSet SetObjective::set_of_mask(uint64_t mask) const {
  std::vector<ThresholdDiscountPair> pairs;
  for (size_t i = 0; i < ground_.size(); ++i) {
    if (mask >> i & 1) pairs.push_back(ground_[i]);
  }
  return CampaignSet(std::move(pairs));
}

Money SetObjective::value(const CampaignSet& set) const {
  ++calls_;
  return oracle_.evaluate(set, population_);
}

Money SetObjective::value(const std::vector<uint8_t>& members) const {
  return value(set_of(members));
}

Money SetObjective::value_of_mask(uint64_t mask) const {
  return value(set_of_mask(mask));
}

bool better_result(const OptimizationResult& a, const OptimizationResult& b) {
  if (a.revenue != b.revenue) return a.revenue > b.revenue;
  if (a.set.size() != b.set.size()) return a.set.size() < b.set.size();
  return std::lexicographical_compare(a.set.begin(), a.set.end(),
                                      b.set.begin(), b.set.end());
}

OptimizationResult greedy_search(std::span<const ThresholdDiscountPair> candidates,
                                 std::span<const ConsumerProfile> population,
                                 const RevenueOracle& oracle,
                                 std::optional<size_t> max_size,
                                 const RuleSet* rules) {
  const Stopwatch clock;
  const SetObjective f(candidates, population, oracle);
  std::vector<uint8_t> chosen(candidates.size(), 0);
  CampaignSet current;
  Money current_value = f.value(current);
  OptimizationResult result;
  result.method = "greedy";

  while (!max_size || current.size() < *max_size) {
    std::optional<size_t> best;
    Money best_gain;
    Money best_value;
    for (size_t i = 0; i < candidates.size(); ++i) {
      if (chosen[i] || current.has_threshold(candidates[i].threshold)) continue;
      const CampaignSet trial = current.with(candidates[i]);
      if (rules && !satisfies_rules(trial, *rules)) continue;
      const Money value = f.value(trial);
      const Money gain = value - current_value;
      if (!best || gain > best_gain) {
        best = i;
        best_gain = gain;
        best_value = value;
      }
    }
    if (!best || best_gain <= Money()) {
      if (best) result.steps.push_back({candidates[*best], best_gain, false});
      break;
    }
    chosen[*best] = 1;
    current = current.with(candidates[*best]);
    current_value = best_value;
    result.steps.push_back({candidates[*best], best_gain, true});
  }

  result.set = current;
  result.revenue = current_value;
  result.oracle = oracle.name();
  result.oracle_calls = f.calls();
  result.wall_time_ms = clock.elapsed_ms();
  return result;
}

std::pair<OptimizationResult, UsmTrace> randomized_usm(
    std::span<const ThresholdDiscountPair> candidates,
    std::span<const ConsumerProfile> population, const RevenueOracle& oracle,
    uint64_t seed) {
  const Stopwatch clock;
  const SetObjective f(candidates, population, oracle);
  const KeyedRng rng(seed, kUsmStream);
  const size_t n = candidates.size();

  std::vector<uint8_t> x(n, 0);
  std::vector<uint8_t> y(n, 1);
  size_t x_size = 0;
  size_t y_size = n;
  Money fx = f.value(x);
  Money fy = f.value(y);

  UsmTrace trace;
  trace.seed = seed;
  trace.steps.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    x[i] = 1;
    const Money fx_added = f.value(x);
    x[i] = 0;
    y[i] = 0;
    const Money fy_removed = f.value(y);
    y[i] = 1;

    UsmStep step;
    step.candidate = candidates[i];
    step.a = fx_added - fx;
    step.b = fy_removed - fy;
    const double a = static_cast<double>(max(step.a, Money()).cents());
    const double b = static_cast<double>(max(step.b, Money()).cents());
    step.add_probability = (a + b > 0.0) ? a / (a + b) : 1.0;
    step.draw = rng.uniform(i);
    if (step.draw < step.add_probability) {
      step.branch = UsmBranch::kAdd;
      x[i] = 1;
      ++x_size;
      fx = fx_added;
    } else {
      step.branch = UsmBranch::kDrop;
      y[i] = 0;
      --y_size;
      fy = fy_removed;
    }
    step.x_size = x_size;
    step.y_size = y_size;
    trace.steps.push_back(step);
  }

  OptimizationResult result;
  result.method = "usm";
  result.set = f.set_of(x);
  result.revenue = fx;
  result.seed = seed;
  result.oracle = oracle.name();
  result.oracle_calls = f.calls();
  for (const auto& step : trace.steps) {
    result.steps.push_back(
        {step.candidate, step.a, step.branch == UsmBranch::kAdd});
  }
  result.wall_time_ms = clock.elapsed_ms();
  trace.final_set = result.set;
  return {std::move(result), std::move(trace)};
}

uint64_t subsets_up_to(size_t n, size_t k) {
  k = std::min(k, n);
  uint64_t total = 0;
  uint64_t binom = 1;  // C(n, s)
  for (size_t s = 0; s <= k; ++s) {
    if (s > 0) {
      // C(n, s) = C(n, s-1) * (n - s + 1) / s, saturating.
      const unsigned __int128 next =
          static_cast<unsigned __int128>(binom) * (n - s + 1) / s;
      binom = next > UINT64_MAX ? UINT64_MAX : static_cast<uint64_t>(next);
    }
    total = (UINT64_MAX - total < binom) ? UINT64_MAX : total + binom;
  }
  return total;
}

OptimizationResult exhaustive_search(
    std::span<const ThresholdDiscountPair> candidates,
    std::span<const ConsumerProfile> population, const RevenueOracle& oracle,
    std::optional<size_t> max_size, const RuleSet* rules) {
  const size_t n = candidates.size();
  const size_t cap = max_size.value_or(n);
  const uint64_t count = subsets_up_to(n, cap);
  if (count > kExhaustiveLimit) {
    throw RefusalError("exhaustive search over " + std::to_string(n) +
                       " candidates would enumerate " + std::to_string(count) +
                       " subsets (limit " + std::to_string(kExhaustiveLimit) +
                       "); reduce the candidates or bound max_size");
  }
  const Stopwatch clock;
  const SetObjective f(candidates, population, oracle);

  OptimizationResult best;
  best.method = "exhaustive";
  best.set = CampaignSet();
  best.revenue = f.value(best.set);

  std::vector<ThresholdDiscountPair> chosen;
  std::function<void(size_t)> extend = [&](size_t next) {
    for (size_t i = next; i < n; ++i) {
      bool clash = false;
      for (const auto& p : chosen) clash |= p.threshold == candidates[i].threshold;
      if (clash) continue;
      chosen.push_back(candidates[i]);
      // Rule violations persist in supersets, so the branch can be cut.
      if (!rules || satisfies_rules(chosen, *rules)) {
        OptimizationResult trial;
        trial.set = CampaignSet(chosen);
        trial.revenue = f.value(trial.set);
        if (better_result(trial, best)) {
          best.set = std::move(trial.set);
          best.revenue = trial.revenue;
        }
        if (chosen.size() < cap) extend(i + 1);
      }
      chosen.pop_back();
    }
  };
  if (cap > 0) extend(0);

  best.oracle = oracle.name();
  best.oracle_calls = f.calls();
  best.wall_time_ms = clock.elapsed_ms();
  return best;
}

SubmodularityReport check_submodularity_table(std::span<const Money> values,
                                              size_t ground_size) {
  const uint64_t full = uint64_t{1} << ground_size;
  if (values.size() != full) {
    throw DataError("submodularity table must hold 2^n values");
  }
  SubmodularityReport report;
  report.ground_size = ground_size;
  report.min_value = *std::min_element(values.begin(), values.end());
  report.max_value = *std::max_element(values.begin(), values.end());
  for (uint64_t b = 0; b < full; ++b) {
    for (size_t u = 0; u < ground_size; ++u) {
      const uint64_t bit = uint64_t{1} << u;
      if (b & bit) continue;
      const Money gain_b = values[b | bit] - values[b];
      // Every A subset of B, including B itself and the empty set.
      for (uint64_t a = b;; a = (a - 1) & b) {
        ++report.triples;
        const Money gain_a = values[a | bit] - values[a];
        if (gain_a < gain_b) {
          ++report.violations;
          report.worst_violation = max(report.worst_violation, gain_b - gain_a);
        }
        if (a == 0) break;
      }
    }
  }
  return report;
}

SubmodularityReport check_submodularity(
    std::span<const ThresholdDiscountPair> candidates,
    std::span<const ConsumerProfile> population, const RevenueOracle& oracle) {
  if (candidates.size() > kSubmodularityCheckLimit) {
    throw RefusalError("submodularity check is limited to " +
                       std::to_string(kSubmodularityCheckLimit) +
                       " candidates, got " + std::to_string(candidates.size()));
  }
  const SetObjective f(candidates, population, oracle);
  std::vector<Money> values(uint64_t{1} << candidates.size());
  for (uint64_t mask = 0; mask < values.size(); ++mask) {
    values[mask] = f.value_of_mask(mask);
  }
  return check_submodularity_table(values, candidates.size());
}

size_t count_negative_ab_steps(const UsmTrace& trace) {
  size_t count = 0;
  for (const auto& step : trace.steps) {
    if ((step.a + step.b).is_negative()) ++count;
  }
  return count;
}

OptimizationResult truncate_result(OptimizationResult result, size_t cap,
                                   std::span<const ConsumerProfile> population,
                                   const RevenueOracle& oracle) {
  while (result.set.size() > cap) {
    std::optional<OptimizationResult> best;
    for (const auto& pair : result.set) {
      OptimizationResult trial;
      trial.set = result.set.without(pair);
      trial.revenue = oracle.evaluate(trial.set, population);
      ++result.oracle_calls;
      if (!best || better_result(trial, *best)) best = std::move(trial);
    }
    result.set = std::move(best->set);
    result.revenue = best->revenue;
  }
  return result;
}

std::vector<OptimizationResult> recommend_top_k(
    std::span<const ThresholdDiscountPair> candidates,
    std::span<const ConsumerProfile> population, const RevenueOracle& oracle,
    const RecommendOptions& options) {
  if (options.k == 0) throw ConfigError("recommend: k must be positive");
  if (options.trials < options.k) {
    throw ConfigError("recommend: trials (" + std::to_string(options.trials) +
                      ") must be at least k (" + std::to_string(options.k) + ")");
  }
  std::vector<OptimizationResult> distinct;
  auto add_unique = [&distinct](OptimizationResult r) {
    for (const auto& seen : distinct) {
      if (seen.set == r.set) return;
    }
    distinct.push_back(std::move(r));
  };
  for (size_t t = 0; t < options.trials; ++t) {
    auto [result, trace] =
        randomized_usm(candidates, population, oracle, derive_seed(options.seed, t));
    if (options.max_set_size) {
      result = truncate_result(std::move(result), *options.max_set_size,
                               population, oracle);
    }
    add_unique(std::move(result));
  }
  if (distinct.size() < options.k) {
    add_unique(greedy_search(candidates, population, oracle, options.max_set_size));
  }
  std::sort(distinct.begin(), distinct.end(), better_result);
  if (distinct.size() > options.k) distinct.resize(options.k);
  return distinct;
}

void to_json(Json& j, const OptimizationResult& result) {
  Json steps = Json::array();
  for (const auto& step : result.steps) {
    steps.push_back({{"threshold_cents", step.pair.threshold.cents()},
                     {"discount_cents", step.pair.discount.cents()},
                     {"marginal_cents", step.marginal.cents()},
                     {"added", step.added}});
  }
  j = Json{{"method", result.method},
           {"set", result.set},
           {"revenue_cents", result.revenue.cents()},
           {"seed", result.seed},
           {"oracle", result.oracle},
           {"oracle_calls", result.oracle_calls},
           {"steps", steps}};
}

void from_json(const Json& j, OptimizationResult& result) {
  try {
    result.method = j.at("method").get<std::string>();
    result.set = j.at("set").get<CampaignSet>();
    result.revenue = money_field(j, "revenue_cents");
    result.seed = j.at("seed").get<uint64_t>();
    result.oracle = j.at("oracle").get<std::string>();
    result.oracle_calls = j.at("oracle_calls").get<uint64_t>();
    result.steps.clear();
    for (const auto& s : j.at("steps")) {
      result.steps.push_back({s.get<ThresholdDiscountPair>(),
                              money_field(s, "marginal_cents"),
                              s.at("added").get<bool>()});
    }
    result.wall_time_ms = j.value("wall_time_ms", 0.0);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("optimization result: ") + e.what());
  }
}

Json result_timing_json(const OptimizationResult& result) {
  return Json{{"method", result.method},
              {"seed", result.seed},
              {"wall_time_ms", result.wall_time_ms}};
}

void to_json(Json& j, const SubmodularityReport& report) {
  j = Json{{"ground_size", report.ground_size},
           {"triples", report.triples},
           {"violations", report.violations},
           {"worst_violation_cents", report.worst_violation.cents()},
           {"min_value_cents", report.min_value.cents()},
           {"max_value_cents", report.max_value.cents()},
           {"submodular", report.submodular()},
           {"nonnegative", report.nonnegative()}};
}

std::string usm_trace_jsonl(const UsmTrace& trace) {
  std::ostringstream out;
  out << Json{{"seed", trace.seed},
              {"steps", trace.steps.size()},
              {"final_set", trace.final_set}}
             .dump()
      << "\n";
  for (size_t i = 0; i < trace.steps.size(); ++i) {
    const UsmStep& s = trace.steps[i];
    out << Json{{"step", i + 1},
                {"threshold_cents", s.candidate.threshold.cents()},
                {"discount_cents", s.candidate.discount.cents()},
                {"a_cents", s.a.cents()},
                {"b_cents", s.b.cents()},
                {"add_probability", s.add_probability},
                {"draw", s.draw},
                {"branch", branch_name(s.branch)},
                {"x_size", s.x_size},
                {"y_size", s.y_size}}
               .dump()
        << "\n";
  }
  return out.str();
}

}  // namespace dmc
