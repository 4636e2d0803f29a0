// Copyright 2026 The jsdm-hybrid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// jsdm-sim: run, validate and generate hybrid-beamforming experiments.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "jsdm/config.hpp"
#include "jsdm/runner.hpp"

namespace {

constexpr const char* kOutDirEnv = "JSDM_OUT_DIR";
constexpr const char* kThreadsEnv = "JSDM_THREADS";

std::optional<std::string> env(const char* name) {
  const char* v = std::getenv(name);
  if (!v || !*v) return std::nullopt;
  return std::string(v);
}

int do_run(const std::string& path, const std::string& out, std::optional<std::uint64_t> seed,
           std::optional<std::size_t> threads, bool db) {
  jsdm::RunOptions opts;
  opts.config_path = path;
  opts.seed = seed;
  opts.db = db;
  if (!out.empty()) {
    opts.out_dir = out;
  } else if (auto e = env(kOutDirEnv)) {
    opts.out_dir = *e;
  }
  if (threads) {
    opts.threads = threads;
  } else if (auto e = env(kThreadsEnv)) {
    std::size_t n = 0;
    try {
      n = std::stoul(*e);
    } catch (const std::exception&) {
      std::cerr << "jsdm-sim: " << kThreadsEnv << " must be a positive integer\n";
      return 2;
    }
    if (n == 0) {
      std::cerr << "jsdm-sim: " << kThreadsEnv << " must be a positive integer\n";
      return 2;
    }
    opts.threads = n;
  }

  const jsdm::ExperimentConfig cfg = jsdm::load_config(path);
  const jsdm::RunSummary summary = jsdm::run_experiment(cfg, opts);
  for (const auto& f : summary.files) std::cout << f << "\n";
  if (summary.failures > 0) {
    std::cerr << "jsdm-sim: " << summary.failures
              << " sweep point(s) failed; see manifest.json\n";
    return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid analog/digital beamforming simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(JSDM_SIM_VERSION));

  std::string run_config, run_out;
  std::optional<std::uint64_t> run_seed;
  std::optional<std::size_t> run_threads;
  bool run_db = false;
  auto* run = app.add_subcommand("run", "Run the experiment described by a config file");
  run->add_option("config", run_config, "Config file")->required()->check(CLI::ExistingFile);
  run->add_option("--out", run_out, "Output directory (env " + std::string(kOutDirEnv) + ")");
  run->add_option("--seed", run_seed, "Master seed, overrides [mc] seed");
  run->add_option("--threads", run_threads, "Worker threads (env " + std::string(kThreadsEnv) + ")")
      ->check(CLI::PositiveNumber);
  run->add_flag("--db", run_db, "Write SINR, nMSE and beampattern columns in dB");

  std::string validate_config;
  auto* validate = app.add_subcommand("validate", "Parse and check a config file");
  validate->add_option("config", validate_config, "Config file")
      ->required()
      ->check(CLI::ExistingFile);

  std::string scenario_name, scenario_out;
  std::size_t scale = 128;
  auto* scenario = app.add_subcommand("scenario", "Print a bundled scenario as a config file");
  scenario->add_option("name", scenario_name, "Scenario name")
      ->required()
      ->check(CLI::IsMember({"table1"}));
  scenario->add_option("--scale", scale, "Number of antennas M")->check(CLI::PositiveNumber);
  scenario->add_option("--out", scenario_out, "Write to this file instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return do_run(run_config, run_out, run_seed, run_threads, run_db);
    if (*validate) {
      const jsdm::ExperimentConfig cfg = jsdm::load_config(validate_config);
      std::cout << validate_config << ": ok (" << cfg.sweep.scenario.groups.size()
                << " groups, " << cfg.sweep.phi_grid.size() << " phi points)\n";
      return 0;
    }
    if (*scenario) {
      const std::string text = jsdm::to_config_text(jsdm::table1_experiment(scale));
      if (scenario_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(scenario_out, std::ios::binary);
        if (!(out << text)) {
          std::cerr << "jsdm-sim: cannot write " << scenario_out << "\n";
          return 1;
        }
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "jsdm-sim: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
