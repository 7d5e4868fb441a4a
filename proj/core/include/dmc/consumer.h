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

#ifndef DMC_CONSUMER_H_
#define DMC_CONSUMER_H_

#include <string>

#include "dmc/money.h"

namespace dmc {

// One potential customer of a shop.
struct ConsumerProfile {
  std::string consumer_id;
  Money base_spend;  // basket value absent any campaign
  Money stretch;     // most the consumer will add to reach a threshold
  int age_bucket = 0;
  int gender = 0;
  int shop_category = 0;
  Money gmv_30d;
  Money gmv_60d;
  Money gmv_90d;
  double distance_to_shop_m = 0.0;

  // Throws a data error on negative amounts, empty id or bad categories.
  void validate() const;

  bool operator==(const ConsumerProfile&) const = default;
};

// Categorical description of the shop a menu is built for.
struct ShopContext {
  std::string shop_id = "shop-0";
  std::string city_id = "city-0";
  int shop_category = 0;

  bool operator==(const ShopContext&) const = default;
};

}  // namespace dmc

#endif  // DMC_CONSUMER_H_
