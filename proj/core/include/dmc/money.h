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

#ifndef DMC_MONEY_H_
#define DMC_MONEY_H_

#include <compare>
#include <cstdint>
#include <string>

namespace dmc {

// An exact amount in minor currency units (cents). Domain values are
// non-negative; differences between revenues (marginals) may be negative.
class Money {
 public:
  constexpr Money() = default;

  static constexpr Money from_cents(int64_t cents) { return Money(cents); }
  static constexpr Money from_units(int64_t units) { return Money(units * 100); }

  constexpr int64_t cents() const { return cents_; }
  // Whole currency units as a real, e.g. for utilities and features.
  constexpr double units() const { return static_cast<double>(cents_) / 100.0; }

  constexpr bool is_negative() const { return cents_ < 0; }

  constexpr Money operator+(Money other) const { return Money(cents_ + other.cents_); }
  constexpr Money operator-(Money other) const { return Money(cents_ - other.cents_); }
  constexpr Money operator-() const { return Money(-cents_); }
  constexpr Money& operator+=(Money other) {
    cents_ += other.cents_;
    return *this;
  }
  constexpr Money& operator-=(Money other) {
    cents_ -= other.cents_;
    return *this;
  }
  constexpr Money operator*(int64_t factor) const { return Money(cents_ * factor); }

  constexpr auto operator<=>(const Money&) const = default;

  // "$12.34" / "-$0.05".
  std::string to_string() const;

 private:
  constexpr explicit Money(int64_t cents) : cents_(cents) {}

  int64_t cents_ = 0;
};

constexpr Money max(Money a, Money b) { return a < b ? b : a; }

}  // namespace dmc

#endif  // DMC_MONEY_H_
