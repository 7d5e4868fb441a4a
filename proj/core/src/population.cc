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

#include "dmc/population.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dmc/error.h"
#include "dmc/keyed_rng.h"

namespace dmc {

IngestResult parse_population(const std::string& text, double radius_m) {
  IngestResult result;
  std::istringstream lines(text);
  std::string line;
  size_t number = 0;
  while (std::getline(lines, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json record;
    try {
      record = Json::parse(line);
    } catch (const nlohmann::json::parse_error&) {
      throw DataError("population line " + std::to_string(number) +
                      ": not a JSON object");
    }
    if (number == 1 && record.is_object() && record.contains("artifact")) {
      continue;
    }
    ConsumerProfile consumer;
    try {
      consumer = record.get<ConsumerProfile>();
    } catch (const Error& e) {
      throw DataError("population line " + std::to_string(number) + ": " +
                      e.what());
    }
    if (consumer.distance_to_shop_m > radius_m) {
      ++result.outside_radius;
      continue;
    }
    result.consumers.push_back(std::move(consumer));
  }
  if (result.consumers.empty()) {
    result.warnings.push_back("population is empty after the " +
                              std::to_string(radius_m) + " m radius filter");
  }
  return result;
}

IngestResult ingest_population(const std::string& path, double radius_m) {
  return parse_population(read_text_file(path), radius_m);
}

void PopulationSpec::validate() const {
  if (count == 0) throw ConfigError("population spec: count must be positive");
  if (base_spend_mean <= Money()) {
    throw ConfigError("population spec: base_spend_mean must be positive");
  }
  const double reals[] = {base_spend_sigma, stretch_ratio, stretch_noise,
                          orders_per_30d, max_distance_m};
  for (double v : reals) {
    if (!std::isfinite(v) || v < 0.0) {
      throw ConfigError("population spec: distribution parameters must be "
                        "finite and non-negative");
    }
  }
  if (age_buckets == 0 || genders == 0 || shop_categories == 0) {
    throw ConfigError("population spec: category counts must be positive");
  }
}

std::vector<ConsumerProfile> synthesize_population(const PopulationSpec& spec,
                                                   uint64_t seed) {
  spec.validate();
  const double mu = std::log(spec.base_spend_mean.units()) -
                    0.5 * spec.base_spend_sigma * spec.base_spend_sigma;
  auto cents = [](double units) {
    return Money::from_cents(std::max<int64_t>(0, std::llround(units * 100.0)));
  };
  std::vector<ConsumerProfile> out;
  out.reserve(spec.count);
  for (size_t i = 0; i < spec.count; ++i) {
    // One stream per consumer keeps consumer i independent of the count.
    RngStream rng(seed, i);
    ConsumerProfile c;
    c.consumer_id = "c" + std::to_string(i);
    const double base = std::exp(mu + spec.base_spend_sigma * rng.normal());
    c.base_spend = cents(base);
    const double stretch_factor =
        std::max(0.0, 1.0 + spec.stretch_noise * rng.normal());
    c.stretch = cents(base * spec.stretch_ratio * stretch_factor);
    c.age_bucket = static_cast<int>(rng.below(spec.age_buckets));
    c.gender = static_cast<int>(rng.below(spec.genders));
    c.shop_category = static_cast<int>(rng.below(spec.shop_categories));
    const double orders30 = spec.orders_per_30d * std::exp(0.5 * rng.normal());
    const double orders60 = spec.orders_per_30d * std::exp(0.5 * rng.normal());
    const double orders90 = spec.orders_per_30d * std::exp(0.5 * rng.normal());
    c.gmv_30d = cents(base * orders30);
    c.gmv_60d = c.gmv_30d + cents(base * orders60);
    c.gmv_90d = c.gmv_60d + cents(base * orders90);
    c.distance_to_shop_m =
        std::round(rng.uniform() * spec.max_distance_m * 10.0) / 10.0;
    out.push_back(std::move(c));
  }
  return out;
}

std::string population_jsonl(const std::vector<ConsumerProfile>& consumers,
                             const std::string& header_line) {
  std::string out;
  if (!header_line.empty()) out += header_line + "\n";
  for (const auto& c : consumers) out += canonical_line(Json(c)) + "\n";
  return out;
}

void to_json(Json& j, const PopulationSpec& s) {
  j = Json{{"count", s.count},
           {"base_spend_mean_cents", s.base_spend_mean.cents()},
           {"base_spend_sigma", s.base_spend_sigma},
           {"stretch_ratio", s.stretch_ratio},
           {"stretch_noise", s.stretch_noise},
           {"age_buckets", s.age_buckets},
           {"genders", s.genders},
           {"shop_categories", s.shop_categories},
           {"orders_per_30d", s.orders_per_30d},
           {"max_distance_m", s.max_distance_m}};
}

void from_json(const Json& j, PopulationSpec& s) {
  PopulationSpec d;
  try {
    s.count = j.value("count", d.count);
    s.base_spend_mean = j.contains("base_spend_mean_cents")
                            ? money_field(j, "base_spend_mean_cents")
                            : d.base_spend_mean;
    s.base_spend_sigma = j.value("base_spend_sigma", d.base_spend_sigma);
    s.stretch_ratio = j.value("stretch_ratio", d.stretch_ratio);
    s.stretch_noise = j.value("stretch_noise", d.stretch_noise);
    s.age_buckets = j.value("age_buckets", d.age_buckets);
    s.genders = j.value("genders", d.genders);
    s.shop_categories = j.value("shop_categories", d.shop_categories);
    s.orders_per_30d = j.value("orders_per_30d", d.orders_per_30d);
    s.max_distance_m = j.value("max_distance_m", d.max_distance_m);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("population spec: ") + e.what());
  } catch (const Error& e) {
    throw ConfigError(std::string("population spec: ") + e.what());
  }
  s.validate();
}

}  // namespace dmc
