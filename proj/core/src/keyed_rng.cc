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

#include "dmc/keyed_rng.h"

#include <cmath>
#include <cstring>
#include <numbers>

namespace dmc {
namespace {

constexpr uint32_t kMul0 = 0xD2511F53;
constexpr uint32_t kMul1 = 0xCD9E8D57;
constexpr uint32_t kWeyl0 = 0x9E3779B9;
constexpr uint32_t kWeyl1 = 0xBB67AE85;

inline void mulhilo(uint32_t a, uint32_t b, uint32_t& hi, uint32_t& lo) {
  const uint64_t product = static_cast<uint64_t>(a) * b;
  hi = static_cast<uint32_t>(product >> 32);
  lo = static_cast<uint32_t>(product);
}

inline double to_unit(uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace

PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) {
  for (int round = 0; round < 10; ++round) {
    uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

PhiloxCounter KeyedRng::block(uint64_t index) const {
  const PhiloxCounter counter = {
      static_cast<uint32_t>(index), static_cast<uint32_t>(index >> 32),
      static_cast<uint32_t>(stream_), static_cast<uint32_t>(stream_ >> 32)};
  const PhiloxKey key = {static_cast<uint32_t>(seed_),
                         static_cast<uint32_t>(seed_ >> 32)};
  return philox4x32_10(counter, key);
}

uint64_t KeyedRng::bits(uint64_t index) const {
  const PhiloxCounter out = block(index);
  return (static_cast<uint64_t>(out[1]) << 32) | out[0];
}

double KeyedRng::uniform(uint64_t index) const { return to_unit(bits(index)); }

double KeyedRng::normal(uint64_t index) const {
  const PhiloxCounter out = block(index);
  const uint64_t a = (static_cast<uint64_t>(out[1]) << 32) | out[0];
  const uint64_t b = (static_cast<uint64_t>(out[3]) << 32) | out[2];
  // Shift into (0, 1] so the log is finite.
  const double u1 = to_unit(a) + 0x1.0p-53;
  const double u2 = to_unit(b);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

uint64_t RngStream::below(uint64_t n) {
  // Rejection keeps the draw exactly uniform.
  const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  uint64_t value;
  do {
    value = bits();
  } while (value >= limit);
  return value % n;
}

uint64_t derive_seed(uint64_t seed, uint64_t index) {
  return KeyedRng(seed, 0x5eed5eed5eed5eedULL).bits(index);
}

uint64_t fnv1a64(const void* data, size_t size) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  uint64_t hash = 0xcbf29ce484222325ULL;
  for (size_t i = 0; i < size; ++i) {
    hash ^= bytes[i];
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

uint64_t fnv1a64(const char* text) { return fnv1a64(text, std::strlen(text)); }

}  // namespace dmc
