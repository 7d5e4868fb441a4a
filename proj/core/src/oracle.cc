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

#include "dmc/oracle.h"

#include <cmath>

namespace dmc {

double exclusive_expected_revenue(std::span<const ThresholdDiscountPair> pairs,
                                  std::span<const double> logits) {
  if (pairs.empty()) return 0.0;
  // Softmax with the implicit no-trigger logit 0, shifted for stability.
  double shift = 0.0;
  for (double l : logits) shift = std::max(shift, l);
  double denominator = std::exp(-shift);
  for (double l : logits) denominator += std::exp(l - shift);
  double expected = 0.0;
  for (size_t i = 0; i < pairs.size(); ++i) {
    const double p = std::exp(logits[i] - shift) / denominator;
    expected += p * static_cast<double>(pairs[i].net().cents());
  }
  return expected;
}

Money round_to_money(double cents) {
  return Money::from_cents(static_cast<int64_t>(std::llround(cents)));
}

}  // namespace dmc
