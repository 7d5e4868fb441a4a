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

#include "dmc/pipeline.h"

#include <algorithm>
#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "dmc/error.h"
#include "dmc/keyed_rng.h"
#include "dmc/neural_scorer.h"
#include "dmc/tabular_oracle.h"

namespace dmc {
namespace {

namespace fs = std::filesystem;

std::string resolve(const std::string& base_dir, const std::string& path) {
  if (path.empty() || fs::path(path).is_absolute()) return path;
  return (fs::path(base_dir) / path).lexically_normal().string();
}

template <typename Fn>
auto run_stage(const char* stage, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(e.kind(), std::string("stage '") + stage + "': " + e.what());
  }
}

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

std::string format_cents(double cents) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.2f", cents / 100.0);
  return buffer;
}

std::string format_ms(double ms) {
  char buffer[64];
  if (ms >= 1000.0) {
    std::snprintf(buffer, sizeof(buffer), "%.2f s", ms / 1000.0);
  } else {
    std::snprintf(buffer, sizeof(buffer), "%.2f ms", ms);
  }
  return buffer;
}

std::string render_table(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows) {
  std::vector<size_t> width(header.size());
  for (size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& row : rows) {
    for (size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    std::string out;
    for (size_t c = 0; c < cells.size(); ++c) {
      if (c > 0) out += " | ";
      out += cells[c];
      if (c + 1 < cells.size()) out += std::string(width[c] - cells[c].size(), ' ');
    }
    return out + "\n";
  };
  std::string rule;
  for (size_t c = 0; c < width.size(); ++c) {
    if (c > 0) rule += "-+-";
    rule += std::string(width[c], '-');
  }
  std::string out = line(header) + rule + "\n";
  for (const auto& row : rows) out += line(row);
  return out;
}

}  // namespace

const char* oracle_kind_name(OracleKind kind) {
  switch (kind) {
    case OracleKind::kSimulator:
      return "sim";
    case OracleKind::kNeural:
      return "neural";
    case OracleKind::kTabular:
      return "tabular";
  }
  return "?";
}

OracleKind parse_oracle_kind(const std::string& name) {
  if (name == "sim") return OracleKind::kSimulator;
  if (name == "neural") return OracleKind::kNeural;
  if (name == "tabular") return OracleKind::kTabular;
  throw ConfigError("unknown oracle '" + name + "' (expected sim, neural or tabular)");
}

void ExperimentConfig::validate() const {
  rules.validate();
  if (population.path.has_value() == population.synthesize.has_value()) {
    throw ConfigError("config: population needs exactly one of 'path' or 'synthesize'");
  }
  if (population.synthesize) population.synthesize->validate();
  if (!(radius_m >= 0.0)) throw ConfigError("config: radius_m must be non-negative");
  if (k == 0) throw ConfigError("config: k must be positive");
  if (trials < k) throw ConfigError("config: trials must be at least k");
  if (max_set_size && *max_set_size == 0) {
    throw ConfigError("config: max_set_size must be positive");
  }
  if (benchmark.shops == 0 || benchmark.seeds == 0 ||
      benchmark.candidates_per_shop == 0) {
    throw ConfigError("config: benchmark counts must be positive");
  }
  if (workers == 0) throw ConfigError("config: workers must be positive");
  switch (oracle.kind) {
    case OracleKind::kSimulator:
      oracle.simulator.validate();
      break;
    case OracleKind::kNeural:
      if (oracle.weights_path.empty()) {
        throw ConfigError("config: neural oracle needs weights_path");
      }
      break;
    case OracleKind::kTabular:
      if (oracle.table_path.empty()) {
        throw ConfigError("config: tabular oracle needs table_path");
      }
      break;
  }
}

ExperimentConfig parse_config(const Json& doc, const std::string& base_dir) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig config;
  try {
    if (doc.contains("rules")) config.rules = doc.at("rules").get<RuleSet>();

    const Json& oracle = doc.at("oracle");
    if (!oracle.is_object() || oracle.size() != 1) {
      throw ConfigError("config: 'oracle' needs exactly one of sim, neural, tabular");
    }
    const std::string kind = oracle.begin().key();
    const Json& spec = oracle.begin().value();
    config.oracle.kind = parse_oracle_kind(kind);
    switch (config.oracle.kind) {
      case OracleKind::kSimulator:
        config.oracle.simulator = spec.get<ChoiceModelParams>();
        break;
      case OracleKind::kNeural:
        config.oracle.weights_path =
            resolve(base_dir, spec.at("weights_path").get<std::string>());
        if (spec.contains("shop")) config.oracle.shop = spec.at("shop").get<ShopContext>();
        if (spec.contains("as_of")) {
          config.oracle.as_of = CalendarDate::parse(spec.at("as_of").get<std::string>());
        }
        break;
      case OracleKind::kTabular:
        config.oracle.table_path =
            resolve(base_dir, spec.at("table_path").get<std::string>());
        break;
    }

    const Json& population = doc.at("population");
    if (population.contains("path")) {
      config.population.path =
          resolve(base_dir, population.at("path").get<std::string>());
    }
    if (population.contains("synthesize")) {
      config.population.synthesize =
          population.at("synthesize").get<PopulationSpec>();
    }

    config.radius_m = doc.value("radius_m", config.radius_m);
    config.seed = doc.value("seed", config.seed);
    config.k = doc.value("k", config.k);
    config.trials = doc.value("trials", config.trials);
    if (doc.contains("max_set_size") && !doc.at("max_set_size").is_null()) {
      config.max_set_size = doc.at("max_set_size").get<size_t>();
    }
    if (doc.contains("max_candidates") && !doc.at("max_candidates").is_null()) {
      config.max_candidates = doc.at("max_candidates").get<size_t>();
    }
    config.pool_cap = doc.value("pool_cap", config.pool_cap);
    if (doc.contains("benchmark")) {
      const Json& b = doc.at("benchmark");
      config.benchmark.shops = b.value("shops", config.benchmark.shops);
      config.benchmark.candidates_per_shop =
          b.value("candidates_per_shop", config.benchmark.candidates_per_shop);
      config.benchmark.seeds = b.value("seeds", config.benchmark.seeds);
    }
    config.workers = doc.value("workers", config.workers);
    config.output_dir = resolve(base_dir, doc.value("output_dir", config.output_dir));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kConfig) throw;
    throw ConfigError(std::string("config: ") + e.what());
  }
  config.validate();
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  Json doc;
  try {
    doc = Json::parse(read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return parse_config(doc, fs::path(path).parent_path().string());
}

Json config_json(const ExperimentConfig& config) {
  Json oracle;
  switch (config.oracle.kind) {
    case OracleKind::kSimulator:
      oracle = Json{{"sim", config.oracle.simulator}};
      break;
    case OracleKind::kNeural:
      oracle = Json{{"neural",
                     {{"weights_path", config.oracle.weights_path},
                      {"shop", config.oracle.shop},
                      {"as_of", config.oracle.as_of.to_string()}}}};
      break;
    case OracleKind::kTabular:
      oracle = Json{{"tabular", {{"table_path", config.oracle.table_path}}}};
      break;
  }
  Json population = Json::object();
  if (config.population.path) population["path"] = *config.population.path;
  if (config.population.synthesize) population["synthesize"] = *config.population.synthesize;
  return Json{
      {"rules", config.rules},
      {"oracle", oracle},
      {"population", population},
      {"radius_m", config.radius_m},
      {"seed", config.seed},
      {"k", config.k},
      {"trials", config.trials},
      {"max_set_size", config.max_set_size ? Json(*config.max_set_size) : Json()},
      {"max_candidates",
       config.max_candidates ? Json(*config.max_candidates) : Json()},
      {"pool_cap", config.pool_cap},
      {"benchmark",
       {{"shops", config.benchmark.shops},
        {"candidates_per_shop", config.benchmark.candidates_per_shop},
        {"seeds", config.benchmark.seeds}}},
      {"workers", config.workers},
      {"output_dir", config.output_dir}};
}

std::string config_hash(const ExperimentConfig& config) {
  Json normalized = config_json(config);
  normalized.erase("workers");
  normalized.erase("output_dir");
  const std::string text = normalized.dump();
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016" PRIx64,
                fnv1a64(text.data(), text.size()));
  return buffer;
}

void select_oracle(ExperimentConfig& config, OracleKind kind) {
  if (kind == config.oracle.kind) return;
  if (kind == OracleKind::kNeural && config.oracle.weights_path.empty()) {
    throw ConfigError("--oracle neural: config has no neural weights_path");
  }
  if (kind == OracleKind::kTabular && config.oracle.table_path.empty()) {
    throw ConfigError("--oracle tabular: config has no tabular table_path");
  }
  config.oracle.kind = kind;
}

std::unique_ptr<RevenueOracle> make_oracle(const ExperimentConfig& config) {
  switch (config.oracle.kind) {
    case OracleKind::kSimulator:
      return std::make_unique<SimulatorOracle>(config.oracle.simulator, config.workers);
    case OracleKind::kNeural:
      return std::make_unique<NeuralOracle>(
          load_scorer_weights(config.oracle.weights_path),
          NeuralContext{config.oracle.shop, config.oracle.as_of}, config.workers);
    case OracleKind::kTabular:
      return std::make_unique<TabularOracle>(
          TabularOracle::load(config.oracle.table_path));
  }
  throw ConfigError("unknown oracle kind");
}

std::vector<ConsumerProfile> load_population(const ExperimentConfig& config,
                                             std::vector<std::string>* warnings) {
  if (config.population.synthesize) {
    return synthesize_population(*config.population.synthesize, config.seed);
  }
  IngestResult ingested = ingest_population(*config.population.path, config.radius_m);
  if (warnings) {
    warnings->insert(warnings->end(), ingested.warnings.begin(),
                     ingested.warnings.end());
  }
  return std::move(ingested.consumers);
}

Json wrap_artifact(const std::string& kind, const std::string& hash, Json data) {
  return Json{{"artifact", kind}, {"config_hash", hash}, {"data", std::move(data)}};
}

Json unwrap_artifact(const Json& document, const std::string& kind,
                     const std::string& expected_hash) {
  if (!document.is_object() || document.value("artifact", "") != kind) {
    throw DataError("expected a '" + kind + "' artifact");
  }
  const std::string hash = document.value("config_hash", "");
  if (hash != expected_hash) {
    throw DataError("'" + kind + "' artifact was produced by config " + hash +
                    ", current config is " + expected_hash +
                    "; refusing to mix artifacts");
  }
  return document.at("data");
}

void write_artifact(const std::string& dir, const std::string& file,
                    const Json& document) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DataError("cannot create output directory '" + dir + "'");
  write_text_file((fs::path(dir) / file).string(), document.dump(2) + "\n");
}

Json read_artifact(const std::string& path, const std::string& kind,
                   const std::string& expected_hash) {
  Json document;
  try {
    document = Json::parse(read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError("artifact '" + path + "': " + e.what());
  }
  return unwrap_artifact(document, kind, expected_hash);
}

PipelineOutput run_pipeline(const ExperimentConfig& config) {
  config.validate();
  const std::string hash = config_hash(config);
  const std::string& dir = config.output_dir;
  PipelineOutput output;
  auto persist = [&](const std::string& file, const Json& document) {
    write_artifact(dir, file, document);
    output.artifacts.push_back(file);
  };
  Json timings = Json::object();

  const auto population = run_stage("population", [&] {
    auto consumers = load_population(config, &output.warnings);
    std::error_code ec;
    fs::create_directories(dir, ec);
    write_text_file((fs::path(dir) / "population.jsonl").string(),
                    population_jsonl(consumers, Json{{"artifact", "population"},
                                                     {"config_hash", hash}}
                                                    .dump()));
    output.artifacts.push_back("population.jsonl");
    return consumers;
  });
  const auto oracle = run_stage("oracle", [&] { return make_oracle(config); });

  double start = now_ms();
  const CandidatePool pool = run_stage("candidates", [&] {
    auto p = generate_candidates(config.rules, config.pool_cap);
    persist("candidates.json", wrap_artifact("candidates", hash, p));
    return p;
  });
  timings["candidates_ms"] = now_ms() - start;

  start = now_ms();
  const CandidatePool scored = run_stage("score", [&] {
    auto p = score_candidates(pool, population, *oracle);
    persist("scored.json", wrap_artifact("scored", hash, p));
    return p;
  });
  timings["score_ms"] = now_ms() - start;

  start = now_ms();
  const CandidatePool filtered = run_stage("filter", [&] {
    auto p = filter_by_rules(scored, config.rules);
    if (config.max_candidates && p.entries.size() > *config.max_candidates) {
      p.entries.resize(*config.max_candidates);
    }
    persist("filtered.json", wrap_artifact("filtered", hash, p));
    return p;
  });
  timings["filter_ms"] = now_ms() - start;

  start = now_ms();
  output.recommendations = run_stage("recommend", [&] {
    const auto ground = filtered.pairs();
    RecommendOptions options{config.k, config.trials, config.seed,
                             config.max_set_size};
    auto results = recommend_top_k(ground, population, *oracle, options);
    persist("recommendations.json",
            wrap_artifact("recommendations", hash, Json(results)));
    return results;
  });
  timings["recommend_ms"] = now_ms() - start;

  // Wall-clock times are the one non-reproducible output; they live apart
  // from the deterministic artifacts.
  Json per_result = Json::array();
  for (const auto& r : output.recommendations) per_result.push_back(result_timing_json(r));
  timings["results"] = per_result;
  write_artifact(dir, "timings.json", wrap_artifact("timings", hash, timings));
  return output;
}

size_t BenchmarkReport::usm_beats_greedy() const {
  size_t count = 0;
  for (const auto& shop : shops) {
    if (shop.usm_mean_cents > static_cast<double>(shop.greedy.cents())) ++count;
  }
  return count;
}

BenchmarkReport run_benchmark(const ExperimentConfig& config) {
  config.validate();
  BenchmarkReport report;
  report.seed = config.seed;
  report.seeds_per_shop = config.benchmark.seeds;
  report.instance = std::to_string(config.benchmark.shops) + " shops x " +
                    std::to_string(config.benchmark.candidates_per_shop) +
                    " candidates, oracle " + oracle_kind_name(config.oracle.kind);

  MethodSummary exhaustive{"Global Optimum Searching"};
  MethodSummary usm_mean{"Randomized USM Searching (mean)"};
  MethodSummary usm_best{"Randomized USM Searching (best)"};
  MethodSummary greedy{"Greedy Searching"};

  for (size_t s = 0; s < config.benchmark.shops; ++s) {
    ExperimentConfig shop_config = config;
    shop_config.seed = derive_seed(config.seed, s);
    shop_config.oracle.simulator.seed =
        derive_seed(config.oracle.simulator.seed, s);
    const auto population = load_population(shop_config, nullptr);
    const auto oracle = make_oracle(shop_config);

    CandidatePool filtered = filter_by_rules(
        score_candidates(generate_candidates(config.rules, config.pool_cap),
                         population, *oracle),
        config.rules);
    if (filtered.entries.size() > config.benchmark.candidates_per_shop) {
      filtered.entries.resize(config.benchmark.candidates_per_shop);
    }
    const auto ground = filtered.pairs();

    ShopOutcome outcome;
    outcome.shop = s;
    outcome.candidates = ground.size();

    const auto g = greedy_search(ground, population, *oracle);
    outcome.greedy = g.revenue;
    outcome.greedy_ms = g.wall_time_ms;
    greedy.oracle_calls += g.oracle_calls;

    double usm_sum = 0.0;
    Money best;
    const double usm_start = now_ms();
    for (size_t t = 0; t < config.benchmark.seeds; ++t) {
      const auto [result, trace] =
          randomized_usm(ground, population, *oracle, derive_seed(shop_config.seed, t));
      usm_sum += static_cast<double>(result.revenue.cents());
      best = t == 0 ? result.revenue : max(best, result.revenue);
      usm_mean.oracle_calls += result.oracle_calls;
    }
    outcome.usm_ms = now_ms() - usm_start;
    outcome.usm_mean_cents = usm_sum / static_cast<double>(config.benchmark.seeds);
    outcome.usm_best = best;

    const auto e = run_stage("exhaustive", [&] {
      return exhaustive_search(ground, population, *oracle);
    });
    outcome.exhaustive = e.revenue;
    outcome.exhaustive_ms = e.wall_time_ms;
    exhaustive.oracle_calls += e.oracle_calls;

    exhaustive.revenue_cents += static_cast<double>(e.revenue.cents());
    exhaustive.wall_ms += outcome.exhaustive_ms;
    usm_mean.revenue_cents += outcome.usm_mean_cents;
    usm_mean.wall_ms += outcome.usm_ms;
    usm_best.revenue_cents += static_cast<double>(best.cents());
    usm_best.wall_ms += outcome.usm_ms;
    greedy.revenue_cents += static_cast<double>(g.revenue.cents());
    greedy.wall_ms += outcome.greedy_ms;
    report.shops.push_back(outcome);
  }
  usm_best.oracle_calls = usm_mean.oracle_calls;
  report.methods = {exhaustive, usm_mean, usm_best, greedy};
  return report;
}

void to_json(Json& j, const BenchmarkReport& report) {
  Json methods = Json::array();
  for (const auto& m : report.methods) {
    methods.push_back({{"name", m.name},
                       {"revenue_cents", m.revenue_cents},
                       {"wall_ms", m.wall_ms},
                       {"oracle_calls", m.oracle_calls}});
  }
  Json shops = Json::array();
  for (const auto& s : report.shops) {
    shops.push_back({{"shop", s.shop},
                     {"candidates", s.candidates},
                     {"greedy_cents", s.greedy.cents()},
                     {"usm_mean_cents", s.usm_mean_cents},
                     {"usm_best_cents", s.usm_best.cents()},
                     {"exhaustive_cents", s.exhaustive.cents()},
                     {"greedy_ms", s.greedy_ms},
                     {"usm_ms", s.usm_ms},
                     {"exhaustive_ms", s.exhaustive_ms}});
  }
  j = Json{{"instance", report.instance},
           {"seed", report.seed},
           {"seeds_per_shop", report.seeds_per_shop},
           {"usm_mean_beats_greedy_shops", report.usm_beats_greedy()},
           {"methods", methods},
           {"shops", shops}};
}

std::string render_benchmark_table(const BenchmarkReport& report) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& m : report.methods) {
    rows.push_back({m.name, format_cents(m.revenue_cents), format_ms(m.wall_ms)});
  }
  std::ostringstream out;
  out << report.instance << ", " << report.seeds_per_shop
      << " USM seeds per shop\n"
      << render_table({"Search Method", "Revenue", "Time Cost"}, rows)
      << "USM mean > greedy on " << report.usm_beats_greedy() << " of "
      << report.shops.size() << " shops\n";
  return out.str();
}

std::string render_results_table(const std::vector<OptimizationResult>& results) {
  std::vector<std::vector<std::string>> rows;
  for (size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    rows.push_back({std::to_string(i + 1), r.method, r.set.to_string(),
                    format_cents(static_cast<double>(r.revenue.cents())),
                    format_ms(r.wall_time_ms)});
  }
  return render_table({"Rank", "Method", "Campaigns", "Revenue", "Time Cost"}, rows);
}

}  // namespace dmc
