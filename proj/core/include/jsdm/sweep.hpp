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


#ifndef JSDM_SWEEP_HPP
#define JSDM_SWEEP_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jsdm/channel.hpp"
#include "jsdm/constrained.hpp"
#include "jsdm/digital.hpp"
#include "jsdm/linksim.hpp"
#include "jsdm/metrics.hpp"

namespace jsdm {

enum class BeamformerKind { kGeb, kDft, kPe, kPeAm, kFixedOrdered, kFixedInterlaced, kDynamic };
enum class EstimatorKind { kNone, kLmmse, kLs };

const char* to_string(BeamformerKind kind);
const char* to_string(EstimatorKind kind);
std::optional<BeamformerKind> parse_beamformer(std::string_view name);
std::optional<CombinerKind> parse_combiner(std::string_view name);
std::optional<EstimatorKind> parse_estimator(std::string_view name);
const std::vector<BeamformerKind>& all_beamformers();

struct DesignOptions {
  AmOptions am;
  std::size_t restarts = kDefaultDynamicRestarts;
  std::uint64_t seed = 0;
};

// Overall analog stage S (M x D) of the requested kind for group g.
cmat design_beamformer(BeamformerKind kind, const Scenario& scn, const GroupStatistics& stats,
                       std::size_t g, const DesignOptions& opts);

struct SweepConfig {
  Scenario scenario;
  std::size_t group = 0;  // target group, 0-based
  std::vector<BeamformerKind> beamformers = all_beamformers();
  std::vector<CombinerKind> combiners = {CombinerKind::kZf, CombinerKind::kLmmse};
  EstimatorKind estimator = EstimatorKind::kLmmse;
  std::size_t pilot_length = 16;
  std::optional<double> pilot_energy;  // linear; default E_s / K_g
  std::vector<double> phi_grid = {0.0};
  std::size_t trials = 200;
  std::uint64_t seed = 1;
  std::size_t block_length = kDefaultBlockLength;
  std::size_t quadrature_points = kDefaultQuadraturePoints;
  DesignOptions design;
  std::optional<double> beampattern_phi = 0.0;
  double theta_step = kDefaultThetaStep;
  std::size_t threads = 1;
};

struct SweepRow {
  double phi = 0.0;
  BeamformerKind beamformer = BeamformerKind::kGeb;
  CombinerKind combiner = CombinerKind::kZf;
  std::size_t user = 0;  // 0-based
  double capacity = 0.0;
  double capacity_se = 0.0;
  double expected_sinr = 0.0;
  std::optional<double> nmse;
};

struct SweepFailure {
  double phi = 0.0;
  std::string beamformer;
  std::string message;
};

struct BeampatternCurve {
  BeamformerKind beamformer = BeamformerKind::kGeb;
  rvec gain;  // aligned with SweepResult::theta_grid
};

struct SweepResult {
  std::vector<double> phi_grid;
  std::vector<SweepRow> rows;  // ordered by phi, beamformer, combiner, user
  std::vector<SweepFailure> failures;
  std::vector<double> theta_grid;
  std::optional<double> beampattern_phi;
  std::vector<BeampatternCurve> beampatterns;

  // Mean capacity over phi and users for one (beamformer, combiner) pair.
  double average_capacity(BeamformerKind bf, CombinerKind comb) const;
  // Per-phi capacities of one user.
  std::vector<double> capacities(BeamformerKind bf, CombinerKind comb, std::size_t user) const;
};

SweepResult phi_sweep(const SweepConfig& cfg);

// Runs fn(i) for i in [0, n) on up to `threads` workers. Each index runs
// exactly once; the first exception is rethrown after all workers finish.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn);

}  // namespace jsdm

#endif  // JSDM_SWEEP_HPP
