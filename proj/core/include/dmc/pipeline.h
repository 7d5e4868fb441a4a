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

#ifndef DMC_PIPELINE_H_
#define DMC_PIPELINE_H_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dmc/candidates.h"
#include "dmc/choice_model.h"
#include "dmc/encoding.h"
#include "dmc/oracle.h"
#include "dmc/population.h"
#include "dmc/search.h"
#include "dmc/serialization.h"

namespace dmc {

enum class OracleKind { kSimulator, kNeural, kTabular };

const char* oracle_kind_name(OracleKind kind);
// "sim" | "neural" | "tabular"; config error otherwise.
OracleKind parse_oracle_kind(const std::string& name);

struct OracleSpec {
  OracleKind kind = OracleKind::kSimulator;
  ChoiceModelParams simulator;
  std::string weights_path;
  ShopContext shop;
  CalendarDate as_of{2020, 4, 24};
  std::string table_path;
};

// Exactly one of `path` and `synthesize` is set.
struct PopulationSource {
  std::optional<std::string> path;
  std::optional<PopulationSpec> synthesize;
};

struct BenchmarkSpec {
  size_t shops = 100;
  size_t candidates_per_shop = 12;
  size_t seeds = 50;
};

struct ExperimentConfig {
  RuleSet rules;
  OracleSpec oracle;
  PopulationSource population;
  double radius_m = kDefaultRadiusM;
  uint64_t seed = 0;
  size_t k = 3;
  size_t trials = 50;
  std::optional<size_t> max_set_size;
  // Keep only the first N filtered candidates as the search ground set.
  std::optional<size_t> max_candidates;
  size_t pool_cap = kDefaultPoolCap;
  BenchmarkSpec benchmark;
  // Not part of the config hash: they never change results.
  unsigned workers = 1;
  std::string output_dir = "out";

  void validate() const;
};

// Relative paths inside the document resolve against `base_dir`.
ExperimentConfig parse_config(const Json& document,
                              const std::string& base_dir = ".");
ExperimentConfig load_config(const std::string& path);
// Normalized form with all defaults spelled out (paths as given).
Json config_json(const ExperimentConfig& config);
// 16 hex digits of FNV-1a over the normalized config, minus output_dir and
// workers.
std::string config_hash(const ExperimentConfig& config);

// Switches the oracle kind. Moving to `sim` without simulator params uses
// the defaults; moving to neural/tabular needs their paths already set.
void select_oracle(ExperimentConfig& config, OracleKind kind);

std::unique_ptr<RevenueOracle> make_oracle(const ExperimentConfig& config);

// Loads or synthesizes the population (synthesis seed = config seed).
std::vector<ConsumerProfile> load_population(const ExperimentConfig& config,
                                             std::vector<std::string>* warnings);

// Every persisted artifact is {"artifact", "config_hash", "data"}.
Json wrap_artifact(const std::string& kind, const std::string& hash, Json data);
// Data error when the kind differs or the artifact came from another config.
Json unwrap_artifact(const Json& document, const std::string& kind,
                     const std::string& expected_hash);
void write_artifact(const std::string& dir, const std::string& file,
                    const Json& document);
Json read_artifact(const std::string& path, const std::string& kind,
                   const std::string& expected_hash);

struct PipelineOutput {
  std::vector<OptimizationResult> recommendations;
  std::vector<std::string> artifacts;  // file names written under output_dir
  std::vector<std::string> warnings;
};

// generate -> score -> filter -> recommend, persisting every stage under
// config.output_dir. Stage failures are rethrown prefixed with the stage.
PipelineOutput run_pipeline(const ExperimentConfig& config);

struct MethodSummary {
  std::string name;
  double revenue_cents = 0.0;  // summed over shops
  double wall_ms = 0.0;
  uint64_t oracle_calls = 0;
};

struct ShopOutcome {
  size_t shop = 0;
  size_t candidates = 0;
  Money greedy;
  double usm_mean_cents = 0.0;
  Money usm_best;
  Money exhaustive;
  double greedy_ms = 0.0;
  double usm_ms = 0.0;  // all seeds
  double exhaustive_ms = 0.0;
};

struct BenchmarkReport {
  std::string instance;
  uint64_t seed = 0;
  size_t seeds_per_shop = 0;
  std::vector<MethodSummary> methods;  // exhaustive, usm-mean, usm-best, greedy
  std::vector<ShopOutcome> shops;

  size_t usm_beats_greedy() const;
};

// Greedy, seeded USM (mean and best) and exhaustive search on the same
// candidates for each synthetic shop. Refusal error when a shop's ground set
// is too large for exhaustive search.
BenchmarkReport run_benchmark(const ExperimentConfig& config);

void to_json(Json& j, const BenchmarkReport& report);

// Aligned plain-text tables.
std::string render_benchmark_table(const BenchmarkReport& report);
std::string render_results_table(const std::vector<OptimizationResult>& results);

}  // namespace dmc

#endif  // DMC_PIPELINE_H_
