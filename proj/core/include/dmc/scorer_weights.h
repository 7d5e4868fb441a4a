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

#ifndef DMC_SCORER_WEIGHTS_H_
#define DMC_SCORER_WEIGHTS_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dmc/encoding.h"
#include "dmc/serialization.h"

namespace dmc {

inline constexpr int kScorerFormatVersion = 1;
inline constexpr size_t kGateWidth = 500;

// Fully connected layer, weight stored row-major as [outputs][inputs].
struct DenseLayer {
  size_t inputs = 0;
  size_t outputs = 0;
  std::vector<double> weight;
  std::vector<double> bias;

  static DenseLayer zeros(size_t inputs, size_t outputs);
  bool operator==(const DenseLayer&) const = default;
};

// Parameters of the campaign trigger scorer:
//
//   dense (9) --3 layers--> | concat sparse one-hots | --joint--> 500
//       gated = joint * iso(threshold) * iso(discount)
//   each not-target pair: [iso(T); iso(D)] --pair_proj--> 500
//       attention pooling with a learned query (default_context if none)
//       --3 layers--> context
//   [gated; context] --3 layers--> output --> sigmoid
struct ScorerWeights {
  int version = kScorerFormatVersion;
  FeatureConfig features;
  std::array<DenseLayer, 3> dense_tower;
  DenseLayer joint;
  DenseLayer pair_proj;
  std::vector<double> attention_query;
  std::vector<double> default_context;
  std::array<DenseLayer, 3> context_tower;
  std::array<DenseLayer, 3> head_tower;
  DenseLayer output;

  // Numeric error naming the first inconsistent layer or non-finite entry.
  void validate() const;

  // All-zero network with the given hidden widths; scores 0.5 everywhere.
  static ScorerWeights zeros(FeatureConfig features, size_t hidden = 16);

  bool operator==(const ScorerWeights&) const = default;
};

// Weight file: JSON document with explicit shapes and one little-endian
// float64 base64 blob per tensor. Loading refuses other format versions.
ScorerWeights load_scorer_weights(const std::string& path);
ScorerWeights parse_scorer_weights(const Json& document);
Json scorer_weights_document(const ScorerWeights& weights);
void save_scorer_weights(const ScorerWeights& weights, const std::string& path);

std::string base64_encode(std::span<const uint8_t> bytes);
std::vector<uint8_t> base64_decode(const std::string& text);

}  // namespace dmc

#endif  // DMC_SCORER_WEIGHTS_H_
