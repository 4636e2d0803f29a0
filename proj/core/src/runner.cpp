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


#include "jsdm/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "jsdm/scenarios.hpp"

#ifndef JSDM_VERSION
#define JSDM_VERSION "unknown"
#endif

namespace jsdm {

namespace {

std::string db_number(double linear) {
  if (!(linear > 0.0)) return "-inf";
  return format_number(linear_to_db(linear));
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

void write_sweep_csv(std::ostream& os, const SweepResult& result, bool db) {
  os << "phi,beamformer,combiner,user," << "capacity,"
     << (db ? "expected_sinr_db,nmse_db" : "expected_sinr,nmse") << ",capacity_se\n";
  for (const auto& row : result.rows) {
    os << format_number(row.phi) << ',' << to_string(row.beamformer) << ','
       << to_string(row.combiner) << ',' << row.user + 1 << ',' << format_number(row.capacity)
       << ',' << (db ? db_number(row.expected_sinr) : format_number(row.expected_sinr)) << ',';
    if (row.nmse) os << (db ? db_number(*row.nmse) : format_number(*row.nmse));
    os << ',' << format_number(row.capacity_se) << '\n';
  }
}

void write_cdf_csv(std::ostream& os, const SweepResult& result, std::size_t points, bool) {
  os << "beamformer,combiner,user,capacity,probability\n";
  if (result.rows.empty() || points < 2) return;
  double top = 0.0;
  for (const auto& row : result.rows) top = std::max(top, row.capacity);
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i)
    grid[i] = top * static_cast<double>(i) / static_cast<double>(points - 1);

  // Keep the first-seen order of (beamformer, combiner, user) triples.
  struct Key {
    BeamformerKind bf;
    CombinerKind comb;
    std::size_t user;
  };
  std::vector<Key> keys;
  for (const auto& row : result.rows) {
    const bool seen = std::any_of(keys.begin(), keys.end(), [&](const Key& k) {
      return k.bf == row.beamformer && k.comb == row.combiner && k.user == row.user;
    });
    if (!seen) keys.push_back({row.beamformer, row.combiner, row.user});
  }
  for (const auto& k : keys) {
    const rvec p = cdf(result.capacities(k.bf, k.comb, k.user), grid);
    for (std::size_t i = 0; i < points; ++i) {
      os << to_string(k.bf) << ',' << to_string(k.comb) << ',' << k.user + 1 << ','
         << format_number(grid[i]) << ',' << format_number(p(static_cast<Eigen::Index>(i)))
         << '\n';
    }
  }
}

void write_beampattern_csv(std::ostream& os, const SweepResult& result, bool db) {
  os << "theta,beamformer," << (db ? "gain_db" : "gain") << '\n';
  for (const auto& curve : result.beampatterns) {
    for (std::size_t i = 0; i < result.theta_grid.size(); ++i) {
      const double gain = curve.gain(static_cast<Eigen::Index>(i));
      os << format_number(result.theta_grid[i]) << ',' << to_string(curve.beamformer) << ','
         << (db ? db_number(gain) : format_number(gain)) << '\n';
    }
  }
}

RunSummary run_experiment(ExperimentConfig cfg, const RunOptions& opts) {
  namespace fs = std::filesystem;
  const auto started = std::chrono::steady_clock::now();
  if (opts.seed) cfg.sweep.seed = *opts.seed;
  if (opts.threads) cfg.sweep.threads = std::max<std::size_t>(1, *opts.threads);
  const bool db = opts.db || cfg.output.db;
  const fs::path dir = opts.out_dir.value_or(cfg.output.directory);
  fs::create_directories(dir);

  nlohmann::json manifest;
  manifest["tool"] = "jsdm-sim";
  manifest["version"] = JSDM_VERSION;
  manifest["config"] = opts.config_path;
  manifest["config_text"] = to_config_text(cfg);
  manifest["seed"] = cfg.sweep.seed;
  manifest["threads"] = cfg.sweep.threads;
  manifest["trials"] = cfg.sweep.trials;
  manifest["block_length"] = cfg.sweep.block_length;
  manifest["tolerances"] = {{"am_tol", cfg.sweep.design.am.tol},
                            {"max_iter", cfg.sweep.design.am.max_iter},
                            {"restarts", cfg.sweep.design.restarts},
                            {"quadrature_points", cfg.sweep.quadrature_points}};
  manifest["phi_points"] = cfg.sweep.phi_grid.size();
  manifest["db"] = db;

  RunSummary summary;
  summary.out_dir = dir.string();
  const auto manifest_path = dir / "manifest.json";
  try {
    const SweepResult result = phi_sweep(cfg.sweep);

    std::ostringstream sweep_csv, cdf_csv, pattern_csv;
    write_sweep_csv(sweep_csv, result, db);
    write_cdf_csv(cdf_csv, result, cfg.output.cdf_points, db);
    write_beampattern_csv(pattern_csv, result, db);
    write_file(dir / "sweep.csv", sweep_csv.str());
    write_file(dir / "cdf.csv", cdf_csv.str());
    write_file(dir / "beampattern.csv", pattern_csv.str());
    summary.files = {(dir / "sweep.csv").string(), (dir / "cdf.csv").string(),
                     (dir / "beampattern.csv").string(), manifest_path.string()};

    nlohmann::json failures = nlohmann::json::array();
    for (const auto& f : result.failures)
      failures.push_back({{"phi", f.phi}, {"beamformer", f.beamformer}, {"error", f.message}});
    summary.failures = result.failures.size();
    manifest["failures"] = failures;
    manifest["status"] = result.failures.empty() ? "complete" : "partial";
  } catch (const std::exception& e) {
    manifest["status"] = "failed";
    manifest["error"] = e.what();
    summary.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    manifest["wall_seconds"] = summary.wall_seconds;
    write_file(manifest_path, manifest.dump(2) + "\n");
    throw;
  }
  summary.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  manifest["wall_seconds"] = summary.wall_seconds;
  write_file(manifest_path, manifest.dump(2) + "\n");
  return summary;
}

}  // namespace jsdm
