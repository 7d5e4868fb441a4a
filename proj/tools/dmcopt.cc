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

// dmcopt: recommends threshold-discount campaign menus for a shop.
//
//   dmcopt --config exp.json --out run/ synth-pop
//   dmcopt --config exp.json --out run/ candidates
//   dmcopt --config exp.json --out run/ score
//   dmcopt --config exp.json --out run/ filter
//   dmcopt --config exp.json --out run/ optimize --method usm
//   dmcopt --config exp.json --out run/ recommend
//   dmcopt --config exp.json --out run/ benchmark
//   dmcopt --config exp.json --out run/ check-submodularity
//
// Exit codes: 0 success, 2 config error, 3 data error, 4 size refusal.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "dmc/error.h"
#include "dmc/pipeline.h"

namespace {

namespace fs = std::filesystem;
using dmc::Json;

struct GlobalOptions {
  std::string config_path;
  std::optional<uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> oracle;
  std::optional<unsigned> workers;
};

dmc::ExperimentConfig resolve_config(const GlobalOptions& g) {
  if (g.config_path.empty()) throw dmc::ConfigError("--config is required");
  dmc::ExperimentConfig config = dmc::load_config(g.config_path);
  if (g.seed) config.seed = *g.seed;
  if (g.out) config.output_dir = *g.out;
  if (g.workers) config.workers = *g.workers;
  if (g.oracle) dmc::select_oracle(config, dmc::parse_oracle_kind(*g.oracle));
  config.validate();
  return config;
}

std::string in_out(const dmc::ExperimentConfig& config, const std::string& file) {
  return (fs::path(config.output_dir) / file).string();
}

dmc::CandidatePool read_pool(const dmc::ExperimentConfig& config,
                             const std::string& file, const std::string& kind) {
  return dmc::read_artifact(in_out(config, file), kind, dmc::config_hash(config))
      .get<dmc::CandidatePool>();
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

int cmd_synth_pop(const dmc::ExperimentConfig& config) {
  std::vector<std::string> warnings;
  const auto population = dmc::load_population(config, &warnings);
  print_warnings(warnings);
  fs::create_directories(config.output_dir);
  const std::string header =
      Json{{"artifact", "population"}, {"config_hash", dmc::config_hash(config)}}
          .dump();
  dmc::write_text_file(in_out(config, "population.jsonl"),
                       dmc::population_jsonl(population, header));
  std::cout << "wrote " << population.size() << " consumers to "
            << in_out(config, "population.jsonl") << "\n";
  return 0;
}

int cmd_candidates(const dmc::ExperimentConfig& config) {
  const auto pool = dmc::generate_candidates(config.rules, config.pool_cap);
  dmc::write_artifact(config.output_dir, "candidates.json",
                      dmc::wrap_artifact("candidates", dmc::config_hash(config), pool));
  std::cout << pool.entries.size() << " candidate pairs ("
            << pool.zero_discount_skipped << " zero-discount pairs skipped)\n";
  return 0;
}

int cmd_score(const dmc::ExperimentConfig& config) {
  const auto pool = read_pool(config, "candidates.json", "candidates");
  std::vector<std::string> warnings;
  const auto population = dmc::load_population(config, &warnings);
  print_warnings(warnings);
  const auto oracle = dmc::make_oracle(config);
  const auto scored = dmc::score_candidates(pool, population, *oracle);
  dmc::write_artifact(config.output_dir, "scored.json",
                      dmc::wrap_artifact("scored", dmc::config_hash(config), scored));
  std::cout << "scored " << scored.entries.size() << " pairs over "
            << population.size() << " consumers with oracle " << oracle->name()
            << "\n";
  return 0;
}

int cmd_filter(const dmc::ExperimentConfig& config) {
  const auto scored = read_pool(config, "scored.json", "scored");
  auto filtered = dmc::filter_by_rules(scored, config.rules);
  if (config.max_candidates && filtered.entries.size() > *config.max_candidates) {
    filtered.entries.resize(*config.max_candidates);
  }
  dmc::write_artifact(config.output_dir, "filtered.json",
                      dmc::wrap_artifact("filtered", dmc::config_hash(config), filtered));
  std::cout << filtered.entries.size() << " pairs pass the business rules\n";
  for (const auto& e : filtered.entries) {
    std::cout << "  " << e.pair.to_string() << "  marginal " << e.revenue.to_string()
              << "\n";
  }
  return 0;
}

int cmd_optimize(const dmc::ExperimentConfig& config, const std::string& method,
                 std::optional<size_t> max_size) {
  const auto filtered = read_pool(config, "filtered.json", "filtered");
  const auto ground = filtered.pairs();
  const auto population = dmc::load_population(config, nullptr);
  const auto oracle = dmc::make_oracle(config);
  const std::string hash = dmc::config_hash(config);

  dmc::OptimizationResult result;
  if (method == "greedy") {
    result = dmc::greedy_search(ground, population, *oracle, max_size, &config.rules);
  } else if (method == "exhaustive") {
    result = dmc::exhaustive_search(ground, population, *oracle, max_size, &config.rules);
  } else if (method == "usm") {
    auto [usm, trace] = dmc::randomized_usm(ground, population, *oracle, config.seed);
    if (max_size) usm = dmc::truncate_result(std::move(usm), *max_size, population, *oracle);
    result = std::move(usm);
    dmc::write_text_file(in_out(config, "usm_trace.jsonl"),
                         Json{{"artifact", "usm_trace"}, {"config_hash", hash}}.dump() +
                             "\n" + dmc::usm_trace_jsonl(trace));
  } else {
    throw dmc::ConfigError("unknown method '" + method + "'");
  }
  Json data = result;
  data["wall_time_ms"] = result.wall_time_ms;
  dmc::write_artifact(config.output_dir, "result_" + method + ".json",
                      dmc::wrap_artifact("result", hash, data));
  std::cout << dmc::render_results_table({result});
  return 0;
}

int cmd_recommend(const dmc::ExperimentConfig& config) {
  const auto output = dmc::run_pipeline(config);
  print_warnings(output.warnings);
  std::cout << dmc::render_results_table(output.recommendations);
  std::cout << "artifacts in " << config.output_dir << ":";
  for (const auto& a : output.artifacts) std::cout << " " << a;
  std::cout << "\n";
  return 0;
}

int cmd_benchmark(const dmc::ExperimentConfig& config) {
  const auto report = dmc::run_benchmark(config);
  const std::string table = dmc::render_benchmark_table(report);
  dmc::write_artifact(config.output_dir, "benchmark.json",
                      dmc::wrap_artifact("benchmark", dmc::config_hash(config), report));
  dmc::write_text_file(in_out(config, "benchmark.txt"), table);
  std::cout << table;
  return 0;
}

int cmd_check_submodularity(const dmc::ExperimentConfig& config, size_t limit) {
  auto filtered = read_pool(config, "filtered.json", "filtered");
  if (filtered.entries.size() > limit) filtered.entries.resize(limit);
  const auto ground = filtered.pairs();
  const auto population = dmc::load_population(config, nullptr);
  const auto oracle = dmc::make_oracle(config);
  const auto report = dmc::check_submodularity(ground, population, *oracle);
  dmc::write_artifact(config.output_dir, "submodularity.json",
                      dmc::wrap_artifact("submodularity", dmc::config_hash(config), report));
  std::printf("ground set %zu, triples %llu, violations %llu (%.4f%%), worst %s, "
              "min f %s\n",
              report.ground_size, static_cast<unsigned long long>(report.triples),
              static_cast<unsigned long long>(report.violations),
              report.triples ? 100.0 * report.violations / report.triples : 0.0,
              report.worst_violation.to_string().c_str(),
              report.min_value.to_string().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Threshold-discount campaign menu optimizer"};
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("--config", g.config_path, "Experiment config (JSON)");
  app.add_option("--seed", g.seed, "Override the config seed");
  app.add_option("--out", g.out, "Output directory");
  app.add_option("--oracle", g.oracle, "Revenue oracle")
      ->check(CLI::IsMember({"sim", "neural", "tabular"}));
  app.add_option("--workers", g.workers, "Oracle worker threads")
      ->check(CLI::PositiveNumber);

  auto* synth = app.add_subcommand("synth-pop", "Write the consumer population");
  auto* candidates = app.add_subcommand("candidates", "Generate candidate pairs");
  auto* score = app.add_subcommand("score", "Score candidates with the oracle");
  auto* filter = app.add_subcommand("filter", "Apply the business rules");
  auto* optimize = app.add_subcommand("optimize", "Run one search method");
  std::string method = "usm";
  std::optional<size_t> max_size;
  optimize->add_option("--method", method, "greedy | usm | exhaustive")
      ->check(CLI::IsMember({"greedy", "usm", "exhaustive"}));
  optimize->add_option("--max-size", max_size, "Cap on menu size");
  auto* recommend = app.add_subcommand("recommend", "Run the full pipeline");
  auto* benchmark = app.add_subcommand("benchmark", "Compare search methods");
  auto* check = app.add_subcommand("check-submodularity",
                                   "Brute-force the submodular inequality");
  size_t limit = dmc::kSubmodularityCheckLimit;
  check->add_option("--limit", limit, "Use the first N filtered candidates");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const dmc::ExperimentConfig config = resolve_config(g);
    if (synth->parsed()) return cmd_synth_pop(config);
    if (candidates->parsed()) return cmd_candidates(config);
    if (score->parsed()) return cmd_score(config);
    if (filter->parsed()) return cmd_filter(config);
    if (optimize->parsed()) return cmd_optimize(config, method, max_size);
    if (recommend->parsed()) return cmd_recommend(config);
    if (benchmark->parsed()) return cmd_benchmark(config);
    if (check->parsed()) return cmd_check_submodularity(config, limit);
  } catch (const dmc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return dmc::exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
