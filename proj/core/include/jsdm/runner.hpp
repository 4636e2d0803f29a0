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


#ifndef JSDM_RUNNER_HPP
#define JSDM_RUNNER_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "jsdm/config.hpp"
#include "jsdm/sweep.hpp"

namespace jsdm {

struct RunOptions {
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> threads;
  bool db = false;
  std::string config_path;
};

struct RunSummary {
  std::string out_dir;
  std::vector<std::string> files;
  std::size_t failures = 0;
  double wall_seconds = 0.0;
};

// Runs the sweep and writes sweep.csv, cdf.csv, beampattern.csv and
// manifest.json into the output directory.
RunSummary run_experiment(ExperimentConfig cfg, const RunOptions& opts);

// Numbers are printed with 9 significant digits.
std::string format_number(double x);

void write_sweep_csv(std::ostream& os, const SweepResult& result, bool db);
void write_cdf_csv(std::ostream& os, const SweepResult& result, std::size_t points, bool db);
void write_beampattern_csv(std::ostream& os, const SweepResult& result, bool db);

}  // namespace jsdm

#endif  // JSDM_RUNNER_HPP
