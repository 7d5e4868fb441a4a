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

#ifndef DMC_SEARCH_H_
#define DMC_SEARCH_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dmc/campaign.h"
#include "dmc/consumer.h"
#include "dmc/oracle.h"
#include "dmc/serialization.h"

namespace dmc {

// Value oracle over subsets of a fixed, ordered ground set of pairs.
class SetObjective {
 public:
  SetObjective(std::span<const ThresholdDiscountPair> ground,
               std::span<const ConsumerProfile> population,
               const RevenueOracle& oracle);

  size_t size() const { return ground_.size(); }
  const ThresholdDiscountPair& element(size_t i) const { return ground_[i]; }

  // f of the elements whose flag is set.
  Money value(const std::vector<uint8_t>& members) const;
  // f of the elements whose bit is set; size() must be below 64.
  Money value_of_mask(uint64_t mask) const;
  Money value(const CampaignSet& set) const;

  CampaignSet set_of(const std::vector<uint8_t>& members) const;
  CampaignSet set_of_mask(uint64_t mask) const;

  uint64_t calls() const { return calls_; }
  const RevenueOracle& oracle() const { return oracle_; }

 private:
  std::span<const ThresholdDiscountPair> ground_;
  std::span<const ConsumerProfile> population_;
  const RevenueOracle& oracle_;
  mutable uint64_t calls_ = 0;
};

struct SearchStep {
  ThresholdDiscountPair pair;
  Money marginal;
  bool added = false;

  bool operator==(const SearchStep&) const = default;
};

struct OptimizationResult {
  std::string method;
  CampaignSet set;
  Money revenue;
  uint64_t seed = 0;
  std::string oracle;
  uint64_t oracle_calls = 0;
  double wall_time_ms = 0.0;
  std::vector<SearchStep> steps;
};

// Strict total order for ranking results: revenue descending, then the
// smaller set, then lexicographically smaller (threshold, discount) lists.
bool better_result(const OptimizationResult& a, const OptimizationResult& b);

enum class UsmBranch { kAdd, kDrop };

struct UsmStep {
  ThresholdDiscountPair candidate;
  Money a;  // f(X + c) - f(X)
  Money b;  // f(Y - c) - f(Y)
  UsmBranch branch = UsmBranch::kAdd;
  double add_probability = 1.0;
  double draw = 0.0;
  size_t x_size = 0;  // after the step
  size_t y_size = 0;
};

struct UsmTrace {
  uint64_t seed = 0;
  std::vector<UsmStep> steps;
  CampaignSet final_set;
};

// Adds, from the empty menu, the candidate with the largest positive
// marginal until none is positive or the set has `max_size` pairs.
// Candidates that would break `rules` (when given) are skipped.
OptimizationResult greedy_search(std::span<const ThresholdDiscountPair> candidates,
                                 std::span<const ConsumerProfile> population,
                                 const RevenueOracle& oracle,
                                 std::optional<size_t> max_size = std::nullopt,
                                 const RuleSet* rules = nullptr);

// Randomized double greedy over `candidates` in the given order:
// X = {}, Y = all; each candidate joins X with probability a'/(a'+b')
// (1 when both are zero), otherwise leaves Y.
std::pair<OptimizationResult, UsmTrace> randomized_usm(
    std::span<const ThresholdDiscountPair> candidates,
    std::span<const ConsumerProfile> population, const RevenueOracle& oracle,
    uint64_t seed);

inline constexpr uint64_t kExhaustiveLimit = uint64_t{1} << 24;

// Best rule-satisfying subset with at most `max_size` pairs. Refusal error
// when more than kExhaustiveLimit subsets would be enumerated.
OptimizationResult exhaustive_search(
    std::span<const ThresholdDiscountPair> candidates,
    std::span<const ConsumerProfile> population, const RevenueOracle& oracle,
    std::optional<size_t> max_size = std::nullopt,
    const RuleSet* rules = nullptr);

// Number of subsets of an n-set with at most k elements (saturating).
uint64_t subsets_up_to(size_t n, size_t k);

inline constexpr size_t kSubmodularityCheckLimit = 12;

struct SubmodularityReport {
  uint64_t triples = 0;     // (A subset of B, u not in B)
  uint64_t violations = 0;  // f(A+u)-f(A) < f(B+u)-f(B)
  Money worst_violation;    // largest shortfall
  Money min_value;          // smallest f over all subsets
  Money max_value;
  size_t ground_size = 0;

  bool submodular() const { return violations == 0; }
  bool nonnegative() const { return !min_value.is_negative(); }
};

// Brute force over every triple; refusal error above 12 candidates.
SubmodularityReport check_submodularity(
    std::span<const ThresholdDiscountPair> candidates,
    std::span<const ConsumerProfile> population, const RevenueOracle& oracle);

// Same check on a precomputed table of f indexed by subset bitmask.
SubmodularityReport check_submodularity_table(std::span<const Money> values,
                                              size_t ground_size);

// Lower-bound precondition of the double-greedy analysis on one trace:
// steps where a + b < 0 (impossible for submodular f).
size_t count_negative_ab_steps(const UsmTrace& trace);

struct RecommendOptions {
  size_t k = 3;
  size_t trials = 50;
  uint64_t seed = 0;
  // Optional post-hoc cap on menu size (backward greedy removal).
  std::optional<size_t> max_set_size;
};

// Runs `trials` seeded USM passes, de-duplicates their menus, ranks them by
// revenue and returns the best k, padded with the greedy menu when fewer than
// k distinct menus came out. Config error if trials < k.
std::vector<OptimizationResult> recommend_top_k(
    std::span<const ThresholdDiscountPair> candidates,
    std::span<const ConsumerProfile> population, const RevenueOracle& oracle,
    const RecommendOptions& options);

// Drops pairs one at a time (the removal keeping f highest) until the set
// has at most `cap` pairs.
OptimizationResult truncate_result(OptimizationResult result, size_t cap,
                                   std::span<const ConsumerProfile> population,
                                   const RevenueOracle& oracle);

// Result without wall-clock time; that goes through result_timing_json.
void to_json(Json& j, const OptimizationResult& result);
void from_json(const Json& j, OptimizationResult& result);
Json result_timing_json(const OptimizationResult& result);
void to_json(Json& j, const SubmodularityReport& report);

// One header line then one line per step.
std::string usm_trace_jsonl(const UsmTrace& trace);

}  // namespace dmc

#endif  // DMC_SEARCH_H_
