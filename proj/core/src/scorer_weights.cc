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

#include "dmc/scorer_weights.h"

#include <cmath>
#include <cstring>

#include "dmc/error.h"

namespace dmc {
namespace {

constexpr char kAlphabet[] =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

std::vector<uint8_t> doubles_to_le_bytes(std::span<const double> values) {
  std::vector<uint8_t> bytes(values.size() * 8);
  for (size_t i = 0; i < values.size(); ++i) {
    uint64_t bits;
    std::memcpy(&bits, &values[i], 8);
    for (int b = 0; b < 8; ++b) bytes[i * 8 + b] = (bits >> (8 * b)) & 0xff;
  }
  return bytes;
}

std::vector<double> le_bytes_to_doubles(std::span<const uint8_t> bytes) {
  std::vector<double> values(bytes.size() / 8);
  for (size_t i = 0; i < values.size(); ++i) {
    uint64_t bits = 0;
    for (int b = 0; b < 8; ++b) {
      bits |= static_cast<uint64_t>(bytes[i * 8 + b]) << (8 * b);
    }
    std::memcpy(&values[i], &bits, 8);
  }
  return values;
}

Json tensor(std::vector<size_t> shape, std::span<const double> values) {
  return Json{{"shape", shape},
              {"dtype", "float64-le"},
              {"data", base64_encode(doubles_to_le_bytes(values))}};
}

std::vector<double> read_tensor(const Json& tensors, const std::string& name,
                                std::vector<size_t> expected_shape) {
  auto it = tensors.find(name);
  if (it == tensors.end()) throw DataError("weight file: missing tensor " + name);
  const auto shape = it->at("shape").get<std::vector<size_t>>();
  if (shape != expected_shape) {
    throw NumericError("weight file: tensor " + name + " has unexpected shape");
  }
  if (it->value("dtype", "") != "float64-le") {
    throw DataError("weight file: tensor " + name + " must be float64-le");
  }
  const auto bytes = base64_decode(it->at("data").get<std::string>());
  size_t count = 1;
  for (size_t d : shape) count *= d;
  if (bytes.size() != count * 8) {
    throw DataError("weight file: tensor " + name + " blob size mismatch");
  }
  return le_bytes_to_doubles(bytes);
}

std::vector<size_t> layer_shape(const Json& tensors, const std::string& name) {
  auto it = tensors.find(name + ".weight");
  if (it == tensors.end()) throw DataError("weight file: missing tensor " + name);
  const auto shape = it->at("shape").get<std::vector<size_t>>();
  if (shape.size() != 2) throw DataError("weight file: " + name + " not 2-D");
  return shape;
}

void put_layer(Json& tensors, const std::string& name, const DenseLayer& layer) {
  tensors[name + ".weight"] = tensor({layer.outputs, layer.inputs}, layer.weight);
  tensors[name + ".bias"] = tensor({layer.outputs}, layer.bias);
}

DenseLayer get_layer(const Json& tensors, const std::string& name) {
  const auto shape = layer_shape(tensors, name);
  DenseLayer layer;
  layer.outputs = shape[0];
  layer.inputs = shape[1];
  layer.weight = read_tensor(tensors, name + ".weight", shape);
  layer.bias = read_tensor(tensors, name + ".bias", {layer.outputs});
  return layer;
}

void check_layer(const DenseLayer& layer, const std::string& name,
                 size_t inputs, size_t outputs) {
  if (layer.inputs != inputs || (outputs != 0 && layer.outputs != outputs)) {
    throw NumericError("scorer layer " + name + ": expected " +
                       std::to_string(inputs) + " inputs" +
                       (outputs ? " and " + std::to_string(outputs) + " outputs"
                                : std::string()) +
                       ", got " + std::to_string(layer.inputs) + "x" +
                       std::to_string(layer.outputs));
  }
  if (layer.weight.size() != layer.inputs * layer.outputs ||
      layer.bias.size() != layer.outputs) {
    throw NumericError("scorer layer " + name + ": storage size mismatch");
  }
  for (double v : layer.weight) {
    if (!std::isfinite(v)) throw NumericError("scorer layer " + name + ": non-finite weight");
  }
  for (double v : layer.bias) {
    if (!std::isfinite(v)) throw NumericError("scorer layer " + name + ": non-finite bias");
  }
}

void check_vector(const std::vector<double>& v, const std::string& name,
                  size_t size) {
  if (v.size() != size) {
    throw NumericError("scorer vector " + name + ": expected " +
                       std::to_string(size) + " entries");
  }
  for (double x : v) {
    if (!std::isfinite(x)) throw NumericError("scorer vector " + name + ": non-finite entry");
  }
}

}  // namespace

DenseLayer DenseLayer::zeros(size_t inputs, size_t outputs) {
  return DenseLayer{inputs, outputs, std::vector<double>(inputs * outputs, 0.0),
                    std::vector<double>(outputs, 0.0)};
}

void ScorerWeights::validate() const {
  if (version != kScorerFormatVersion) {
    throw DataError("scorer weights: unsupported format version " +
                    std::to_string(version));
  }
  features.validate();
  if (features.encoding_length != kGateWidth) {
    throw NumericError("scorer weights: gate width must be 500");
  }
  size_t width = kDenseFeatureCount;
  for (size_t i = 0; i < 3; ++i) {
    check_layer(dense_tower[i], "dense." + std::to_string(i), width, 0);
    width = dense_tower[i].outputs;
  }
  check_layer(joint, "joint", width + features.sparse_width(), kGateWidth);
  check_layer(pair_proj, "pair_proj", 2 * kGateWidth, kGateWidth);
  check_vector(attention_query, "attention.query", kGateWidth);
  check_vector(default_context, "context.default", kGateWidth);
  width = kGateWidth;
  for (size_t i = 0; i < 3; ++i) {
    check_layer(context_tower[i], "context." + std::to_string(i), width, 0);
    width = context_tower[i].outputs;
  }
  width += kGateWidth;
  for (size_t i = 0; i < 3; ++i) {
    check_layer(head_tower[i], "head." + std::to_string(i), width, 0);
    width = head_tower[i].outputs;
  }
  check_layer(output, "output", width, 1);
}

ScorerWeights ScorerWeights::zeros(FeatureConfig features, size_t hidden) {
  ScorerWeights w;
  w.features = features;
  w.dense_tower = {DenseLayer::zeros(kDenseFeatureCount, hidden),
                   DenseLayer::zeros(hidden, hidden),
                   DenseLayer::zeros(hidden, hidden)};
  w.joint = DenseLayer::zeros(hidden + features.sparse_width(), kGateWidth);
  w.pair_proj = DenseLayer::zeros(2 * kGateWidth, kGateWidth);
  w.attention_query.assign(kGateWidth, 0.0);
  w.default_context.assign(kGateWidth, 0.0);
  w.context_tower = {DenseLayer::zeros(kGateWidth, hidden),
                     DenseLayer::zeros(hidden, hidden),
                     DenseLayer::zeros(hidden, hidden)};
  w.head_tower = {DenseLayer::zeros(kGateWidth + hidden, hidden),
                  DenseLayer::zeros(hidden, hidden),
                  DenseLayer::zeros(hidden, hidden)};
  w.output = DenseLayer::zeros(hidden, 1);
  return w;
}

Json scorer_weights_document(const ScorerWeights& w) {
  Json tensors = Json::object();
  for (size_t i = 0; i < 3; ++i) {
    put_layer(tensors, "dense." + std::to_string(i), w.dense_tower[i]);
    put_layer(tensors, "context." + std::to_string(i), w.context_tower[i]);
    put_layer(tensors, "head." + std::to_string(i), w.head_tower[i]);
  }
  put_layer(tensors, "joint", w.joint);
  put_layer(tensors, "pair_proj", w.pair_proj);
  put_layer(tensors, "output", w.output);
  tensors["attention.query"] = tensor({w.attention_query.size()}, w.attention_query);
  tensors["context.default"] = tensor({w.default_context.size()}, w.default_context);
  return Json{{"format", "dmc-scorer"},
              {"version", w.version},
              {"features", w.features},
              {"tensors", tensors}};
}

ScorerWeights parse_scorer_weights(const Json& document) {
  ScorerWeights w;
  try {
    if (document.value("format", "") != "dmc-scorer") {
      throw DataError("weight file: format must be 'dmc-scorer'");
    }
    w.version = document.at("version").get<int>();
    if (w.version != kScorerFormatVersion) {
      throw DataError("weight file: unsupported format version " +
                      std::to_string(w.version));
    }
    w.features = document.at("features").get<FeatureConfig>();
    const Json& tensors = document.at("tensors");
    for (size_t i = 0; i < 3; ++i) {
      w.dense_tower[i] = get_layer(tensors, "dense." + std::to_string(i));
      w.context_tower[i] = get_layer(tensors, "context." + std::to_string(i));
      w.head_tower[i] = get_layer(tensors, "head." + std::to_string(i));
    }
    w.joint = get_layer(tensors, "joint");
    w.pair_proj = get_layer(tensors, "pair_proj");
    w.output = get_layer(tensors, "output");
    w.attention_query = read_tensor(tensors, "attention.query", {kGateWidth});
    w.default_context = read_tensor(tensors, "context.default", {kGateWidth});
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("weight file: ") + e.what());
  }
  w.validate();
  return w;
}

ScorerWeights load_scorer_weights(const std::string& path) {
  Json document;
  try {
    document = Json::parse(read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError("weight file '" + path + "': " + e.what());
  }
  return parse_scorer_weights(document);
}

void save_scorer_weights(const ScorerWeights& weights, const std::string& path) {
  weights.validate();
  write_text_file(path, scorer_weights_document(weights).dump(1) + "\n");
}

std::string base64_encode(std::span<const uint8_t> bytes) {
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  size_t i = 0;
  for (; i + 2 < bytes.size(); i += 3) {
    const uint32_t n = (bytes[i] << 16) | (bytes[i + 1] << 8) | bytes[i + 2];
    out += kAlphabet[(n >> 18) & 63];
    out += kAlphabet[(n >> 12) & 63];
    out += kAlphabet[(n >> 6) & 63];
    out += kAlphabet[n & 63];
  }
  const size_t rest = bytes.size() - i;
  if (rest > 0) {
    uint32_t n = bytes[i] << 16;
    if (rest == 2) n |= bytes[i + 1] << 8;
    out += kAlphabet[(n >> 18) & 63];
    out += kAlphabet[(n >> 12) & 63];
    out += rest == 2 ? kAlphabet[(n >> 6) & 63] : '=';
    out += '=';
  }
  return out;
}

std::vector<uint8_t> base64_decode(const std::string& text) {
  auto value = [](char c) -> int {
    if (c >= 'A' && c <= 'Z') return c - 'A';
    if (c >= 'a' && c <= 'z') return c - 'a' + 26;
    if (c >= '0' && c <= '9') return c - '0' + 52;
    if (c == '+') return 62;
    if (c == '/') return 63;
    return -1;
  };
  if (text.size() % 4 != 0) throw DataError("base64: length not a multiple of 4");
  std::vector<uint8_t> out;
  out.reserve(text.size() / 4 * 3);
  for (size_t i = 0; i < text.size(); i += 4) {
    int v[4];
    int padding = 0;
    for (int k = 0; k < 4; ++k) {
      const char c = text[i + k];
      if (c == '=' && i + 4 == text.size() && k >= 2) {
        v[k] = 0;
        ++padding;
      } else if ((v[k] = value(c)) < 0 || padding > 0) {
        throw DataError("base64: invalid character");
      }
    }
    const uint32_t n = (v[0] << 18) | (v[1] << 12) | (v[2] << 6) | v[3];
    out.push_back((n >> 16) & 0xff);
    if (padding < 2) out.push_back((n >> 8) & 0xff);
    if (padding < 1) out.push_back(n & 0xff);
  }
  return out;
}

}  // namespace dmc
