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

#include "dmc/consumer.h"

#include "dmc/error.h"

namespace dmc {

void ConsumerProfile::validate() const {
  if (consumer_id.empty()) throw DataError("consumer_id must not be empty");
  const auto where = " (consumer '" + consumer_id + "')";
  if (base_spend.is_negative()) throw DataError("negative base_spend" + where);
  if (stretch.is_negative()) throw DataError("negative stretch" + where);
  if (gmv_30d.is_negative() || gmv_60d.is_negative() ||
      gmv_90d.is_negative()) {
    throw DataError("negative recent GMV" + where);
  }
  if (age_bucket < 0 || gender < 0 || shop_category < 0) {
    throw DataError("negative category index" + where);
  }
  if (!(distance_to_shop_m >= 0.0)) {
    throw DataError("distance_to_shop_m must be a non-negative number" + where);
  }
}

}  // namespace dmc
