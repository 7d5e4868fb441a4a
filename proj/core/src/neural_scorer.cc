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

#include "dmc/neural_scorer.h"

#include <algorithm>
#include <cmath>

#include "dmc/error.h"
#include "dmc/parallel.h"

namespace dmc {
namespace {

void check_shape(const DenseLayer& layer, const char* name) {
  if (layer.weight.size() != layer.inputs * layer.outputs ||
      layer.bias.size() != layer.outputs) {
    throw NumericError(std::string("scorer layer ") + name + ": " +
                       std::to_string(layer.weight.size()) + " weights and " +
                       std::to_string(layer.bias.size()) + " biases for shape " +
                       std::to_string(layer.outputs) + "x" +
                       std::to_string(layer.inputs));
  }
}

std::vector<double> affine_relu(const DenseLayer& layer,
                                std::span<const double> input, bool relu,
                                const char* name) {
  check_shape(layer, name);
  if (input.size() != layer.inputs) {
    throw NumericError(std::string("scorer layer ") + name + ": input has " +
                       std::to_string(input.size()) + " entries, expected " +
                       std::to_string(layer.inputs));
  }
  std::vector<double> out(layer.outputs);
  for (size_t r = 0; r < layer.outputs; ++r) {
    const double* row = &layer.weight[r * layer.inputs];
    double sum = layer.bias[r];
    for (size_t c = 0; c < layer.inputs; ++c) sum += row[c] * input[c];
    if (!std::isfinite(sum)) {
      throw NumericError(std::string("scorer layer ") + name +
                         ": non-finite activation");
    }
    out[r] = relu ? std::max(sum, 0.0) : sum;
  }
  return out;
}

std::vector<double> run_tower(const std::array<DenseLayer, 3>& tower,
                              std::vector<double> x, const char* name) {
  for (const auto& layer : tower) x = affine_relu(layer, x, true, name);
  return x;
}

std::vector<double> attention_pool(
    std::span<const std::vector<double>* const> embeddings,
    const ScorerWeights& weights) {
  if (embeddings.empty()) {
    if (weights.default_context.size() != kGateWidth) {
      throw NumericError("scorer context.default: expected 500 entries");
    }
    return weights.default_context;
  }
  if (weights.attention_query.size() != kGateWidth) {
    throw NumericError("scorer attention.query: expected 500 entries");
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(kGateWidth));
  std::vector<double> scores(embeddings.size());
  for (size_t j = 0; j < embeddings.size(); ++j) {
    double dot = 0.0;
    for (size_t k = 0; k < kGateWidth; ++k) {
      dot += weights.attention_query[k] * (*embeddings[j])[k];
    }
    scores[j] = dot * scale;
  }
  const double top = *std::max_element(scores.begin(), scores.end());
  double total = 0.0;
  for (double& s : scores) total += (s = std::exp(s - top));
  std::vector<double> pooled(kGateWidth, 0.0);
  for (size_t j = 0; j < embeddings.size(); ++j) {
    const double alpha = scores[j] / total;
    for (size_t k = 0; k < kGateWidth; ++k) pooled[k] += alpha * (*embeddings[j])[k];
  }
  return pooled;
}

// Forward pass with the not-target embeddings already computed.
double forward(const FeatureBundle& bundle, const ScorerWeights& weights,
               std::span<const std::vector<double>* const> embeddings) {
  const FeatureConfig& features = weights.features;
  if (bundle.sparse_onehot.size() != features.sparse_width()) {
    throw NumericError("scorer layer joint: bundle has " +
                       std::to_string(bundle.sparse_onehot.size()) +
                       " sparse entries, weights expect " +
                       std::to_string(features.sparse_width()));
  }
  std::vector<double> h(bundle.dense.begin(), bundle.dense.end());
  h = run_tower(weights.dense_tower, std::move(h), "dense");
  for (uint8_t bit : bundle.sparse_onehot) h.push_back(bit);
  const std::vector<double> joint = affine_relu(weights.joint, h, true, "joint");

  const auto threshold_gate =
      isotonic_encode(bundle.target.threshold, features.encoding_unit,
                      features.encoding_length)
          .bits();
  const auto discount_gate =
      isotonic_encode(bundle.target.discount, features.encoding_unit,
                      features.encoding_length)
          .bits();
  std::vector<double> z = apply_gates(joint, threshold_gate, discount_gate);

  std::vector<double> context = run_tower(
      weights.context_tower, attention_pool(embeddings, weights), "context");
  z.insert(z.end(), context.begin(), context.end());
  z = run_tower(weights.head_tower, std::move(z), "head");
  const double logit = affine_relu(weights.output, z, false, "output")[0];
  return logit;
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

std::vector<double> apply_gates(std::span<const double> joint,
                                std::span<const uint8_t> threshold_gate,
                                std::span<const uint8_t> discount_gate) {
  if (threshold_gate.size() != joint.size() ||
      discount_gate.size() != joint.size()) {
    throw NumericError("scorer gates: width mismatch with joint layer");
  }
  std::vector<double> out(joint.size());
  for (size_t k = 0; k < joint.size(); ++k) {
    out[k] = joint[k] * threshold_gate[k] * discount_gate[k];
  }
  return out;
}

std::vector<double> embed_pair(const ThresholdDiscountPair& pair,
                               const ScorerWeights& weights) {
  const FeatureConfig& f = weights.features;
  const size_t t_ones =
      isotonic_encode(pair.threshold, f.encoding_unit, f.encoding_length)
          .popcount();
  const size_t d_ones =
      isotonic_encode(pair.discount, f.encoding_unit, f.encoding_length)
          .popcount();
  const DenseLayer& layer = weights.pair_proj;
  check_shape(layer, "pair_proj");
  if (layer.inputs != 2 * kGateWidth || layer.outputs != kGateWidth ||
      f.encoding_length != kGateWidth) {
    throw NumericError("scorer layer pair_proj: expected 500x1000 over 500-long codes");
  }
  std::vector<double> out(kGateWidth);
  for (size_t r = 0; r < kGateWidth; ++r) {
    const double* row = &layer.weight[r * layer.inputs];
    double sum = layer.bias[r];
    for (size_t c = 0; c < t_ones; ++c) sum += row[c];
    for (size_t c = 0; c < d_ones; ++c) sum += row[kGateWidth + c];
    if (!std::isfinite(sum)) {
      throw NumericError("scorer layer pair_proj: non-finite activation");
    }
    out[r] = std::max(sum, 0.0);
  }
  return out;
}

std::vector<double> pool_context(
    std::span<const ThresholdDiscountPair> not_target,
    const ScorerWeights& weights) {
  std::vector<std::vector<double>> embeddings;
  embeddings.reserve(not_target.size());
  for (const auto& pair : not_target) embeddings.push_back(embed_pair(pair, weights));
  std::vector<const std::vector<double>*> refs;
  for (const auto& e : embeddings) refs.push_back(&e);
  return attention_pool(refs, weights);
}

double neural_logit(const FeatureBundle& bundle, const ScorerWeights& weights) {
  std::vector<std::vector<double>> embeddings;
  embeddings.reserve(bundle.not_target.size());
  for (const auto& pair : bundle.not_target) {
    embeddings.push_back(embed_pair(pair, weights));
  }
  std::vector<const std::vector<double>*> refs;
  for (const auto& e : embeddings) refs.push_back(&e);
  return forward(bundle, weights, refs);
}

double neural_score(const FeatureBundle& bundle, const ScorerWeights& weights) {
  return sigmoid(neural_logit(bundle, weights));
}

Money neural_evaluate(const CampaignSet& menu,
                      std::span<const ConsumerProfile> population,
                      const ScorerWeights& weights, const NeuralContext& context,
                      unsigned workers) {
  if (menu.empty() || population.empty()) return Money();
  const auto pairs = menu.pairs();
  // Pair embeddings do not depend on the consumer.
  std::vector<std::vector<double>> embeddings;
  embeddings.reserve(pairs.size());
  for (const auto& pair : pairs) embeddings.push_back(embed_pair(pair, weights));

  std::vector<double> expected(population.size());
  parallel_for(population.size(), workers, [&](size_t i) {
    std::vector<double> logits(pairs.size());
    std::vector<const std::vector<double>*> others;
    for (size_t p = 0; p < pairs.size(); ++p) {
      const FeatureBundle bundle =
          assemble_features(population[i], context.shop, pairs[p], menu,
                            context.as_of, weights.features);
      others.clear();
      for (size_t q = 0; q < pairs.size(); ++q) {
        if (q != p) others.push_back(&embeddings[q]);
      }
      logits[p] = forward(bundle, weights, others);
    }
    expected[i] = exclusive_expected_revenue(pairs, logits);
  });
  double total = 0.0;
  for (double cents : expected) total += cents;
  return round_to_money(total);
}

NeuralOracle::NeuralOracle(ScorerWeights weights, NeuralContext context,
                           unsigned workers)
    : weights_(std::move(weights)), context_(context), workers_(workers) {
  weights_.validate();
}

Money NeuralOracle::evaluate(const CampaignSet& menu,
                             std::span<const ConsumerProfile> population) const {
  return neural_evaluate(menu, population, weights_, context_, workers_);
}

double NeuralOracle::evaluate_single(const ThresholdDiscountPair& target,
                                     const ConsumerProfile& consumer,
                                     const CampaignSet& menu_context) const {
  return neural_score(assemble_features(consumer, context_.shop, target,
                                        menu_context, context_.as_of,
                                        weights_.features),
                      weights_);
}

}  // namespace dmc
