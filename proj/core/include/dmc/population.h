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

#ifndef DMC_POPULATION_H_
#define DMC_POPULATION_H_

#include <cstdint>
#include <string>
#include <vector>

#include "dmc/consumer.h"
#include "dmc/serialization.h"

namespace dmc {

inline constexpr double kDefaultRadiusM = 3000.0;

struct IngestResult {
  std::vector<ConsumerProfile> consumers;
  size_t outside_radius = 0;
  std::vector<std::string> warnings;
};

// Reads one consumer record per line, keeping consumers within `radius_m`
// of the shop in file order. Blank lines and a leading artifact header line
// are skipped. Data error naming the line on any malformed record.
IngestResult ingest_population(const std::string& path,
                               double radius_m = kDefaultRadiusM);
IngestResult parse_population(const std::string& text,
                              double radius_m = kDefaultRadiusM);

// Distribution parameters for synthetic consumers.
struct PopulationSpec {
  size_t count = 400;
  Money base_spend_mean = Money::from_units(40);
  double base_spend_sigma = 0.35;  // log-space std-dev
  double stretch_ratio = 0.2;      // mean stretch as a fraction of base spend
  double stretch_noise = 0.5;      // relative std-dev of the stretch
  size_t age_buckets = 8;
  size_t genders = 3;
  size_t shop_categories = 8;
  double orders_per_30d = 4.0;
  double max_distance_m = 2500.0;

  void validate() const;
  bool operator==(const PopulationSpec&) const = default;
};

// Seed-deterministic synthetic population: log-normal base spend with the
// given mean, stretch proportional to base spend with multiplicative noise,
// uniform categorical demographics.
std::vector<ConsumerProfile> synthesize_population(const PopulationSpec& spec,
                                                   uint64_t seed);

std::string population_jsonl(const std::vector<ConsumerProfile>& consumers,
                             const std::string& header_line = "");

void to_json(Json& j, const PopulationSpec& spec);
void from_json(const Json& j, PopulationSpec& spec);

}  // namespace dmc

#endif  // DMC_POPULATION_H_
