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

#ifndef DMC_KEYED_RNG_H_
#define DMC_KEYED_RNG_H_

#include <array>
#include <cstddef>
#include <cstdint>

namespace dmc {

// Philox4x32-10 block function: a keyed bijection on 128-bit counters.
using PhiloxCounter = std::array<uint32_t, 4>;
using PhiloxKey = std::array<uint32_t, 2>;

PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key);

// Stateless random numbers addressed by (seed, stream, index). The same
// address always yields the same value, so results never depend on the
// order or the thread in which draws are made.
class KeyedRng {
 public:
  KeyedRng(uint64_t seed, uint64_t stream) : seed_(seed), stream_(stream) {}

  uint64_t bits(uint64_t index) const;
  // Uniform on [0, 1) with 53 random bits.
  double uniform(uint64_t index) const;
  // Standard normal via Box-Muller on the two halves of one block.
  double normal(uint64_t index) const;

 private:
  PhiloxCounter block(uint64_t index) const;

  uint64_t seed_;
  uint64_t stream_;
};

// Sequential view over a KeyedRng for code that draws many values in order.
class RngStream {
 public:
  RngStream(uint64_t seed, uint64_t stream) : rng_(seed, stream) {}

  uint64_t bits() { return rng_.bits(next_++); }
  double uniform() { return rng_.uniform(next_++); }
  double normal() { return rng_.normal(next_++); }
  // Uniform integer in [0, n); n > 0.
  uint64_t below(uint64_t n);

 private:
  KeyedRng rng_;
  uint64_t next_ = 0;
};

// Child seed for the `index`-th independent trial under `seed`.
uint64_t derive_seed(uint64_t seed, uint64_t index);

// FNV-1a 64-bit over raw bytes.
uint64_t fnv1a64(const void* data, size_t size);
uint64_t fnv1a64(const char* text);

}  // namespace dmc

#endif  // DMC_KEYED_RNG_H_
