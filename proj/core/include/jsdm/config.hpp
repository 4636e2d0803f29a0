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


#ifndef JSDM_CONFIG_HPP
#define JSDM_CONFIG_HPP

#include <cstddef>
#include <string>
#include <string_view>

#include "jsdm/numerics.hpp"
#include "jsdm/sweep.hpp"

namespace jsdm {

// Parse or semantic error at a 1-based line and column of the config text.
class ConfigError : public Error {
 public:
  ConfigError(std::string source, std::size_t line, std::size_t column, const std::string& what);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct OutputOptions {
  std::string directory = "jsdm-out";
  bool db = false;
  std::size_t cdf_points = 101;
};

struct ExperimentConfig {
  SweepConfig sweep;
  OutputOptions output;
};

// See docs/config-format.md for the grammar.
ExperimentConfig parse_config(std::string_view text, std::string_view source = "<config>");
ExperimentConfig load_config(const std::string& path);

// Canonical text form; parse_config(to_config_text(c)) reproduces c.
std::string to_config_text(const ExperimentConfig& cfg);

// The delay/angle profile of the four-group reference scenario with default
// run settings (phi from -45 to 45 degrees in 1 degree steps).
ExperimentConfig table1_experiment(std::size_t antennas = 128);

}  // namespace jsdm

#endif  // JSDM_CONFIG_HPP
