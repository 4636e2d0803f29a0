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


#include "jsdm/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "jsdm/chanest.hpp"
#include "jsdm/geb.hpp"
#include "jsdm/random.hpp"
#include "jsdm/statistics.hpp"

namespace jsdm {

namespace {

struct Named {
  BeamformerKind kind;
  const char* name;
};

constexpr Named kBeamformerNames[] = {
    {BeamformerKind::kGeb, "geb"},
    {BeamformerKind::kDft, "dft"},
    {BeamformerKind::kPe, "pe"},
    {BeamformerKind::kPeAm, "pe-am"},
    {BeamformerKind::kFixedOrdered, "fixed-ordered"},
    {BeamformerKind::kFixedInterlaced, "fixed-interlaced"},
    {BeamformerKind::kDynamic, "dynamic"},
};

// Stream tags for derive_seed.
constexpr std::uint64_t kDesignStream = 1;
constexpr std::uint64_t kChannelStream = 2;
constexpr std::uint64_t kPilotStream = 3;

struct PointResult {
  std::vector<SweepRow> rows;
  std::vector<SweepFailure> failures;
};

PointResult evaluate_point(const SweepConfig& cfg, std::size_t index) {
  PointResult out;
  const double phi = cfg.phi_grid[index];
  Scenario scn = cfg.scenario;
  scn.phi_deg = phi;
  const std::size_t g = cfg.group;

  CovarianceSet cov;
  GroupStatistics stats;
  try {
    cov = build_covariances(scn, cfg.quadrature_points);
    stats = group_statistics(cov, scn, g);
  } catch (const Error& e) {
    out.failures.push_back({phi, "*", e.what()});
    return out;
  }
  const ChannelSampler sampler(cov);
  const auto& grp = scn.groups[g];

  DesignOptions design = cfg.design;
  design.seed = derive_seed(cfg.seed, {kDesignStream, index});
  const std::uint64_t channel_seed = derive_seed(cfg.seed, {kChannelStream, index});
  const std::uint64_t pilot_seed = derive_seed(cfg.seed, {kPilotStream, index});

  for (BeamformerKind kind : cfg.beamformers) {
    try {
      const cmat s = design_beamformer(kind, scn, stats, g, design);
      const double score = expected_sinr(stats, s);

      std::optional<double> estimate_error;
      if (cfg.estimator != EstimatorKind::kNone) {
        const PilotBlock pilots =
            build_pilots(scn, g, cfg.pilot_length, pilot_seed, cfg.pilot_energy);
        const cmat r_h = effective_channel_covariance(cov, s, g);
        const cmat r_eta = reduce(stats, s).r_eta;
        const cmat z = cfg.estimator == EstimatorKind::kLmmse
                           ? lmmse_estimator(pilots, r_h, r_eta)
                           : ls_estimator(pilots, active_taps_by_user(scn, g), grp.rf_chains);
        estimate_error = nmse(z, pilots, r_h, r_eta);
      }

      std::vector<SweepRow> rows;
      for (CombinerKind comb : cfg.combiners) {
        const ErgodicResult erg = ergodic_capacity(sampler, stats, scn, g, s, comb, cfg.trials,
                                                   channel_seed, cfg.block_length);
        for (std::size_t m = 0; m < grp.user_count(); ++m) {
          const auto mm = static_cast<Eigen::Index>(m);
          rows.push_back({phi, kind, comb, m, erg.mean(mm), erg.std_error(mm), score,
                          estimate_error});
        }
      }
      out.rows.insert(out.rows.end(), rows.begin(), rows.end());
    } catch (const Error& e) {
      out.failures.push_back({phi, to_string(kind), e.what()});
    }
  }
  return out;
}

}  // namespace

const char* to_string(BeamformerKind kind) {
  for (const auto& n : kBeamformerNames)
    if (n.kind == kind) return n.name;
  return "?";
}

const char* to_string(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::kNone:
      return "none";
    case EstimatorKind::kLmmse:
      return "lmmse";
    case EstimatorKind::kLs:
      return "ls";
  }
  return "?";
}

std::optional<BeamformerKind> parse_beamformer(std::string_view name) {
  for (const auto& n : kBeamformerNames)
    if (name == n.name) return n.kind;
  return std::nullopt;
}

std::optional<CombinerKind> parse_combiner(std::string_view name) {
  if (name == "zf") return CombinerKind::kZf;
  if (name == "lmmse") return CombinerKind::kLmmse;
  return std::nullopt;
}

std::optional<EstimatorKind> parse_estimator(std::string_view name) {
  if (name == "none") return EstimatorKind::kNone;
  if (name == "lmmse") return EstimatorKind::kLmmse;
  if (name == "ls") return EstimatorKind::kLs;
  return std::nullopt;
}

const std::vector<BeamformerKind>& all_beamformers() {
  static const std::vector<BeamformerKind> kinds = [] {
    std::vector<BeamformerKind> out;
    for (const auto& n : kBeamformerNames) out.push_back(n.kind);
    return out;
  }();
  return kinds;
}

cmat design_beamformer(BeamformerKind kind, const Scenario& scn, const GroupStatistics& stats,
                       std::size_t g, const DesignOptions& opts) {
  if (g >= scn.groups.size()) throw ValidationError("design_beamformer: unknown group id");
  const std::size_t d = scn.groups[g].rf_chains;
  if (kind == BeamformerKind::kDft) return dft_beamformer(scn, g, d).effective();

  const UnconstrainedBeamformer geb = compute_geb(stats, d);
  switch (kind) {
    case BeamformerKind::kGeb:
      return geb.s;
    case BeamformerKind::kPe:
      return phase_extraction(geb).effective();
    case BeamformerKind::kPeAm:
      return pe_am(geb.s, opts.am).first.effective();
    case BeamformerKind::kFixedOrdered:
      return fixed_subarray(geb.s, ordered_mask(scn.antennas, d), std::nullopt, opts.seed, opts.am)
          .first.effective();
    case BeamformerKind::kFixedInterlaced:
      return fixed_subarray(geb.s, interlaced_mask(scn.antennas, d), std::nullopt, opts.seed,
                            opts.am)
          .first.effective();
    case BeamformerKind::kDynamic:
      return dynamic_subarray(geb.s, stats, opts.restarts, opts.seed, opts.am).first.effective();
    case BeamformerKind::kDft:
      break;
  }
  throw ValidationError("design_beamformer: unknown beamformer kind");
}

double SweepResult::average_capacity(BeamformerKind bf, CombinerKind comb) const {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& row : rows) {
    if (row.beamformer == bf && row.combiner == comb) {
      sum += row.capacity;
      ++count;
    }
  }
  if (count == 0) throw ValidationError("average_capacity: no rows for this pair");
  return sum / static_cast<double>(count);
}

std::vector<double> SweepResult::capacities(BeamformerKind bf, CombinerKind comb,
                                            std::size_t user) const {
  std::vector<double> out;
  for (const auto& row : rows)
    if (row.beamformer == bf && row.combiner == comb && row.user == user)
      out.push_back(row.capacity);
  return out;
}

void parallel_for(std::size_t n, std::size_t threads,
                  const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::max<std::size_t>(1, std::min(threads, n));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

SweepResult phi_sweep(const SweepConfig& cfg) {
  cfg.scenario.validate();
  if (cfg.group >= cfg.scenario.groups.size())
    throw ValidationError("run.group: no such group in the scenario");
  if (cfg.phi_grid.empty()) throw ValidationError("sweep: empty phi grid");
  if (cfg.trials < 1) throw ValidationError("mc.trials: must be >= 1");
  if (cfg.block_length < cfg.scenario.taps)
    throw ValidationError("run.block_length: must be >= scenario taps");

  std::vector<PointResult> points(cfg.phi_grid.size());
  parallel_for(points.size(), cfg.threads,
               [&](std::size_t i) { points[i] = evaluate_point(cfg, i); });

  SweepResult out;
  out.phi_grid = cfg.phi_grid;
  for (auto& p : points) {
    out.rows.insert(out.rows.end(), p.rows.begin(), p.rows.end());
    out.failures.insert(out.failures.end(), p.failures.begin(), p.failures.end());
  }

  if (cfg.beampattern_phi) {
    out.beampattern_phi = cfg.beampattern_phi;
    out.theta_grid = theta_grid(cfg.theta_step);
    Scenario scn = cfg.scenario;
    scn.phi_deg = *cfg.beampattern_phi;
    try {
      const CovarianceSet cov = build_covariances(scn, cfg.quadrature_points);
      const GroupStatistics stats = group_statistics(cov, scn, cfg.group);
      DesignOptions design = cfg.design;
      design.seed = derive_seed(cfg.seed, {kDesignStream, cfg.phi_grid.size()});
      for (BeamformerKind kind : cfg.beamformers) {
        try {
          const cmat s = design_beamformer(kind, scn, stats, cfg.group, design);
          out.beampatterns.push_back({kind, beampattern(s, out.theta_grid)});
        } catch (const Error& e) {
          out.failures.push_back({*cfg.beampattern_phi, to_string(kind), e.what()});
        }
      }
    } catch (const Error& e) {
      out.failures.push_back({*cfg.beampattern_phi, "*", e.what()});
    }
  }
  return out;
}

}  // namespace jsdm
