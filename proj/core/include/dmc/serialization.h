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

#ifndef DMC_SERIALIZATION_H_
#define DMC_SERIALIZATION_H_

// Canonical structured-text form of the domain types. Every record is a
// JSON object with keys in sorted order, one record per line; money fields
// carry a `_cents` suffix and hold integers.

#include <nlohmann/json.hpp>
#include <string>

#include "dmc/campaign.h"
#include "dmc/consumer.h"

namespace dmc {

using Json = nlohmann::json;

void to_json(Json& j, const ThresholdDiscountPair& pair);
void from_json(const Json& j, ThresholdDiscountPair& pair);

void to_json(Json& j, const CampaignSet& set);
void from_json(const Json& j, CampaignSet& set);

void to_json(Json& j, const RuleSet& rules);
void from_json(const Json& j, RuleSet& rules);

void to_json(Json& j, const ConsumerProfile& consumer);
void from_json(const Json& j, ConsumerProfile& consumer);

void to_json(Json& j, const ShopContext& shop);
void from_json(const Json& j, ShopContext& shop);

// Reads an integer-cents field; data error if absent or not an integer.
Money money_field(const Json& j, const char* key);

// Compact single-line dump with sorted keys.
std::string canonical_line(const Json& j);

// Writes `text` to `path`, throwing a data error on failure.
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace dmc

#endif  // DMC_SERIALIZATION_H_
