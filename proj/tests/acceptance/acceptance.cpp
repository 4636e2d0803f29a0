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


// Acceptance suite. Prints one PASS/FAIL line per criterion; exit status is
// nonzero when any criterion fails. Optional arguments select criteria by number.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "jsdm/chanest.hpp"
#include "jsdm/config.hpp"
#include "jsdm/constrained.hpp"
#include "jsdm/digital.hpp"
#include "jsdm/geb.hpp"
#include "jsdm/linksim.hpp"
#include "jsdm/metrics.hpp"
#include "jsdm/runner.hpp"
#include "jsdm/scenarios.hpp"
#include "jsdm/statistics.hpp"
#include "jsdm/sweep.hpp"
#include "oracles.hpp"

namespace jsdm {
namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// Random desk-scale instance: a group's statistics and its GEB.
struct Instance {
  Scenario scn;
  GroupStatistics stats;
  cmat geb;
};

Instance random_instance(Rng& rng, std::size_t m, std::size_t d) {
  Instance in;
  in.scn = testing::random_scenario(rng, m, 3, 4, d);
  in.stats = group_statistics(build_covariances(in.scn), in.scn, 0);
  in.geb = compute_geb(in.stats, d).s;
  return in;
}

Scenario desk_table(double own_db, double interferer_db) {
  Scenario scn = table1_scenario(32, 4, own_db);
  for (std::size_t g = 1; g < scn.groups.size(); ++g)
    scn.groups[g].symbol_energy = db_to_linear(interferer_db);
  return scn;
}

bool non_increasing(const std::vector<double>& r, double slack) {
  for (std::size_t i = 1; i < r.size(); ++i)
    if (r[i] > r[i - 1] + slack) return false;
  return true;
}

Outcome geb_optimality() {
  Rng rng(1001);
  double worst = std::numeric_limits<double>::infinity();
  for (int s = 0; s < 10; ++s) {
    const Instance in = random_instance(rng, 16, 4);
    const double best = reduced_mutual_info(in.stats, in.geb);
    for (int i = 0; i < 1000; ++i) {
      const double other = reduced_mutual_info(in.stats, testing::random_orthonormal(rng, 16, 4));
      worst = std::min(worst, best - other);
    }
  }
  return {worst >= -1e-9, fmt("min margin %.3e over 10x1000", worst)};
}

Outcome right_factor_invariance() {
  Rng rng(1002);
  double cost_dev = 0.0, pattern_dev = 0.0;
  const std::vector<double> grid = theta_grid();
  for (int s = 0; s < 4; ++s) {
    const Instance in = random_instance(rng, 16, 4);
    for (const cmat& s0 : {in.geb, testing::random_orthonormal(rng, 16, 4)}) {
      const double base = reduced_mutual_info(in.stats, s0);
      const rvec pattern = beampattern(s0, grid);
      for (int i = 0; i < 100; ++i) {
        const cmat a = testing::random_invertible(rng, 4, 1e4);
        const cmat s1 = s0 * a;
        cost_dev = std::max(cost_dev, std::abs(reduced_mutual_info(in.stats, s1) - base) / base);
        pattern_dev =
            std::max(pattern_dev, (beampattern(s1, grid) - pattern).cwiseAbs().maxCoeff());
      }
    }
  }
  return {cost_dev <= 1e-6 && pattern_dev <= 1e-8,
          fmt("cost rel dev %.2e", cost_dev) + fmt(", pattern abs dev %.2e", pattern_dev)};
}

Outcome per_bin_covariance() {
  // Own group alone with negligible noise; the reduced received signal at
  // each bin must have covariance S^H R_s S.
  Scenario full = desk_table(40.0, 20.0);
  Scenario scn = full;
  scn.groups = {full.groups[0]};
  scn.noise_power = 1e-300;
  const auto cov = build_covariances(scn);
  const auto stats = group_statistics(cov, scn, 0);
  const cmat s = compute_geb(group_statistics(build_covariances(full), full, 0), 4).s;
  const cmat want = s.adjoint() * stats.r_s * s;

  const std::size_t n = 64;
  const std::vector<std::size_t> bins = {0, 5, 13, 21, 32, 40, 51, 63};
  const ChannelSampler sampler(cov);
  CombinerBank identity{std::vector<cmat>(n, cmat::Identity(4, 4))};
  std::vector<cmat> acc(bins.size(), cmat::Zero(4, 4));
  const std::size_t blocks = 20000;
  for (std::size_t b = 0; b < blocks; ++b) {
    const auto real = sampler.sample(derive_seed(3003, {b}));
    const auto out = simulate_block(scn, real, {GroupReceiver{0, s, identity}}, n,
                                    derive_seed(3004, {b}));
    const cmat& z = out.estimates[0];  // S^H y in the time domain
    for (std::size_t i = 0; i < bins.size(); ++i) {
      cvec zk = cvec::Zero(4);
      for (std::size_t t = 0; t < n; ++t) {
        const double turns = static_cast<double>((bins[i] * t) % n) / static_cast<double>(n);
        zk += z.col(static_cast<Eigen::Index>(t)) * std::polar(1.0, -2.0 * kPi * turns);
      }
      zk /= std::sqrt(static_cast<double>(n));
      acc[i] += zk * zk.adjoint();
    }
  }
  double worst = 0.0;
  for (auto& a : acc) worst = std::max(worst, (a / static_cast<double>(blocks) - want).norm() / want.norm());
  return {worst <= 0.05, fmt("max rel Frobenius error %.4f over 8 bins", worst)};
}

Outcome am_monotonicity() {
  Rng rng(1004);
  int bad1 = 0, bad2 = 0, bad3 = 0;
  double unit = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Instance in = random_instance(rng, 16, 4);
    const auto [bf, t1] = pe_am(in.geb);
    bad1 += !non_increasing(t1.residuals, 1e-12);
    for (double u : t1.unitarity) unit = std::max(unit, u);
    const ConnectionMask mask = i % 2 ? ordered_mask(16, 4) : interlaced_mask(16, 4);
    bad2 += !non_increasing(fixed_subarray(in.geb, mask, std::nullopt, rng()).second.residuals, 1e-12);
    bad3 += !non_increasing(dynamic_connection(in.geb, rng()).second.residuals, 1e-12);
  }
  std::ostringstream d;
  d << "violations " << bad1 << "/" << bad2 << "/" << bad3 << ", max unitarity " << fmt("%.2e", unit);
  return {bad1 == 0 && bad2 == 0 && bad3 == 0 && unit <= 1e-10, d.str()};
}

Outcome phase_extraction_optimality() {
  Rng rng(1005);
  std::uniform_real_distribution<double> log_scale(std::log(1e-4), std::log(kPi));
  std::normal_distribution<double> normal;
  int beaten = 0;
  double margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 20; ++i) {
    const Instance in = random_instance(rng, 16, 4);
    const cmat pe = phase_extraction(in.geb).s_c;
    const double best = (in.geb - pe).norm();
    for (int k = 0; k < 10000; ++k) {
      const double scale = std::exp(log_scale(rng));
      cmat other = pe;
      for (Eigen::Index c = 0; c < other.size(); ++c)
        other(c) *= std::polar(1.0, scale * normal(rng));
      const double d = (in.geb - other).norm();
      margin = std::min(margin, d - best);
      beaten += d < best;
    }
  }
  return {beaten == 0, fmt("min margin %.3e over 20x10^4", margin)};
}

Outcome procrustes_optimality() {
  Rng rng(1006);
  int beaten = 0;
  for (int i = 0; i < 20; ++i) {
    const Instance in = random_instance(rng, 16, 4);
    const cmat s_c = i % 2 ? phase_extraction(in.geb).s_c
                           : testing::random_unit_modulus(rng, 16, 4, 0.25);
    const cmat x = procrustes_unitary(s_c, in.geb);
    const double best_cm = (in.geb - s_c * x).norm();
    const cmat cand = dynamic_connection(in.geb, rng()).first;
    const cmat a = procrustes_unitary(in.geb, cand);
    const double best_rot = (in.geb * a - cand).norm();
    for (int k = 0; k < 10000; ++k) {
      const cmat u = testing::random_unitary(rng, 4);
      beaten += (in.geb - s_c * u).norm() < best_cm - 1e-12;
      beaten += (in.geb * u - cand).norm() < best_rot - 1e-12;
    }
  }
  return {beaten == 0, std::to_string(beaten) + " random unitaries beat the solution"};
}

Outcome zf_contract() {
  const Scenario scn = desk_table(40.0, 20.0);
  const auto cov = build_covariances(scn);
  const auto stats = group_statistics(cov, scn, 0);
  const cmat s = compute_geb(stats, 4).s;
  const ChannelSampler sampler(cov);
  double worst = 0.0;
  for (std::uint64_t t = 0; t < 200; ++t) {
    const auto eff = effective_channel(s, sampler.sample(derive_seed(7007, {t})), 0, 64);
    const auto bank = zf_combiners(eff);
    for (std::size_t k = 0; k < 64; ++k)
      worst = std::max(worst, (bank.w[k].adjoint() * eff.freq[k] - cmat::Identity(2, 2)).norm());
  }

  // LMMSE limit: own group alone at E_s/N_0 = 10^6.
  Scenario lone = scn;
  lone.groups = {scn.groups[0]};
  lone.groups[0].symbol_energy = 1e6;
  const auto lcov = build_covariances(lone);
  const auto lstats = group_statistics(lcov, lone, 0);
  const cmat ls = compute_geb(lstats, 4).s;
  const auto rd = reduce(lstats, ls);
  const ChannelSampler lsampler(lcov);
  double gap = 0.0;
  for (std::uint64_t t = 0; t < 50; ++t) {
    const auto eff = effective_channel(ls, lsampler.sample(derive_seed(7008, {t})), 0, 64);
    const auto zf = zf_combiners(eff);
    const auto lm = lmmse_combiners(eff, rd, 1e6, 2);
    for (std::size_t k = 0; k < 64; ++k)
      gap = std::max(gap, (lm.w[k] - zf.w[k]).norm() / zf.w[k].norm());
  }
  return {worst <= 1e-10 && gap <= 1e-3,
          fmt("max |W^H L - I| %.2e", worst) + fmt(", LMMSE-ZF rel gap %.2e", gap)};
}

Outcome lmmse_beats_zf() {
  const Scenario base = desk_table(40.0, 40.0);
  int violations = 0;
  std::size_t checked = 0;
  double margin = std::numeric_limits<double>::infinity();
  for (double phi : {-30.0, 0.0, 25.0}) {
    Scenario scn = base;
    scn.phi_deg = phi;
    const auto cov = build_covariances(scn);
    const auto stats = group_statistics(cov, scn, 0);
    const ChannelSampler sampler(cov);
    for (BeamformerKind kind : all_beamformers()) {
      const cmat s = design_beamformer(kind, scn, stats, 0, DesignOptions{});
      const auto rd = reduce(stats, s);
      for (std::uint64_t t = 0; t < 40; ++t) {
        const auto eff = effective_channel(s, sampler.sample(derive_seed(8008, {t})), 0, 64);
        const auto zf = bussgang_reports(eff, zf_combiners(eff), rd, scn.groups[0].symbol_energy, 2);
        const auto lm = bussgang_reports(eff, lmmse_combiners(eff, rd, scn.groups[0].symbol_energy, 2),
                                         rd, scn.groups[0].symbol_energy, 2);
        for (std::size_t m = 0; m < 2; ++m) {
          ++checked;
          margin = std::min(margin, lm[m].sinr - zf[m].sinr);
          violations += lm[m].sinr < zf[m].sinr - 1e-9;
        }
      }
    }
  }
  std::ostringstream d;
  d << violations << " of " << checked << " user realizations below ZF, min margin "
    << fmt("%.3e", margin);
  return {violations == 0, d.str()};
}

struct Summary {
  double mean = 0.0;
  double se = 0.0;
};

Summary summarize(const SweepResult& r, BeamformerKind bf, CombinerKind comb) {
  double sum = 0.0, var = 0.0;
  std::size_t n = 0;
  for (const auto& row : r.rows) {
    if (row.beamformer != bf || row.combiner != comb) continue;
    sum += row.capacity;
    var += row.capacity_se * row.capacity_se;
    ++n;
  }
  return {sum / static_cast<double>(n), std::sqrt(var) / static_cast<double>(n)};
}

// a > b by more than one standard error of the difference.
bool beyond_one_se(const Summary& a, const Summary& b) {
  return a.mean - b.mean > std::hypot(a.se, b.se);
}

SweepConfig desk_sweep(Scenario scn, std::vector<BeamformerKind> bfs) {
  SweepConfig cfg;
  cfg.scenario = std::move(scn);
  cfg.beamformers = std::move(bfs);
  cfg.estimator = EstimatorKind::kNone;
  cfg.phi_grid = arange_inclusive(-45.0, 45.0, 1.0);
  cfg.trials = 200;
  cfg.seed = 9;
  cfg.beampattern_phi.reset();
  if (const char* env = std::getenv("JSDM_THREADS")) cfg.threads = std::strtoul(env, nullptr, 10);
  if (cfg.threads == 0) cfg.threads = 1;
  return cfg;
}

std::string describe(const std::vector<BeamformerKind>& bfs, const std::map<int, Summary>& s,
                     const char* comb) {
  std::ostringstream d;
  d << comb;
  for (std::size_t i = 0; i < bfs.size(); ++i)
    d << " " << to_string(bfs[i]) << "=" << fmt("%.3f", s.at(static_cast<int>(i)).mean) << "("
      << fmt("%.3f", s.at(static_cast<int>(i)).se) << ")";
  return d.str();
}

Outcome constrained_ordering() {
  const std::vector<BeamformerKind> bfs = {BeamformerKind::kGeb, BeamformerKind::kPeAm,
                                           BeamformerKind::kPe, BeamformerKind::kDft};
  const auto r = phi_sweep(desk_sweep(desk_table(40.0, 20.0), bfs));
  Outcome out{r.failures.empty(), ""};
  for (CombinerKind comb : {CombinerKind::kZf, CombinerKind::kLmmse}) {
    std::map<int, Summary> s;
    for (std::size_t i = 0; i < bfs.size(); ++i) s[static_cast<int>(i)] = summarize(r, bfs[i], comb);
    for (int i = 0; i + 1 < 4; ++i) out.pass = out.pass && beyond_one_se(s[i], s[i + 1]);
    const double gap = (s[0].mean - s[1].mean) / s[0].mean;
    out.pass = out.pass && gap <= 0.05;
    out.detail += (out.detail.empty() ? "" : "; ") + describe(bfs, s, to_string(comb)) +
                  fmt(" gap %.2f%%", 100.0 * gap);
  }
  return out;
}

Outcome subarray_ordering() {
  const std::vector<BeamformerKind> bfs = {BeamformerKind::kDynamic, BeamformerKind::kFixedOrdered,
                                           BeamformerKind::kFixedInterlaced};
  const auto r = phi_sweep(desk_sweep(merged_scenario(32, 8, 30.0, 20.0), bfs));
  Outcome out{r.failures.empty(), ""};
  std::map<std::string, std::map<int, Summary>> all;
  for (CombinerKind comb : {CombinerKind::kZf, CombinerKind::kLmmse}) {
    auto& s = all[to_string(comb)];
    for (std::size_t i = 0; i < bfs.size(); ++i) s[static_cast<int>(i)] = summarize(r, bfs[i], comb);
    out.pass = out.pass && beyond_one_se(s[0], s[1]) && beyond_one_se(s[1], s[2]);
    out.detail += (out.detail.empty() ? "" : "; ") + describe(bfs, s, to_string(comb));
  }
  const double dyn_gap = all["lmmse"][0].mean - all["zf"][0].mean;
  const double ord_gap = all["lmmse"][1].mean - all["zf"][1].mean;
  out.pass = out.pass && dyn_gap <= ord_gap;
  out.detail += fmt("; LMMSE-ZF gap dynamic %.3f", dyn_gap) + fmt(" ordered %.3f", ord_gap);
  return out;
}

// Mean AoA of each delay cluster of a group, averaged over its users.
std::vector<double> cluster_means(const Scenario& scn, std::size_t g) {
  std::map<std::size_t, std::pair<double, int>> acc;
  const auto& grp = scn.groups[g];
  const double offset = grp.mobile ? scn.phi_deg : 0.0;
  for (const auto& user : grp.users)
    for (const auto& mpc : user.mpcs) {
      acc[mpc.delay].first += mpc.aoa_deg + offset;
      acc[mpc.delay].second += 1;
    }
  std::vector<double> out;
  for (const auto& [delay, v] : acc) out.push_back(v.first / v.second);
  return out;
}

Outcome null_property() {
  const Scenario scn = table1_scenario(32);
  const auto cov = build_covariances(scn);
  double worst_depth = std::numeric_limits<double>::infinity();
  int above_dft = 0;
  for (std::size_t g = 0; g < scn.groups.size(); ++g) {
    const cmat geb = compute_geb(group_statistics(cov, scn, g), 4).s;
    const cmat dft = dft_beamformer(scn, g, 4).s_c;
    const rvec own = beampattern(geb, cluster_means(scn, g));
    std::vector<double> interferers;
    for (std::size_t h = 0; h < scn.groups.size(); ++h)
      if (h != g)
        for (double mu : cluster_means(scn, h)) interferers.push_back(mu);
    const rvec at_geb = beampattern(geb, interferers);
    const rvec at_dft = beampattern(dft, interferers);
    const double peak = own.maxCoeff();
    for (Eigen::Index i = 0; i < at_geb.size(); ++i) {
      worst_depth = std::min(worst_depth, 10.0 * std::log10(peak / at_geb(i)));
      above_dft += !(at_geb(i) < at_dft(i));
    }
  }
  return {worst_depth >= 20.0 && above_dft == 0,
          fmt("shallowest null %.1f dB", worst_depth) + ", " + std::to_string(above_dft) +
              " angles not below DFT"};
}

Outcome estimation_ordering() {
  const std::vector<std::size_t> lengths = {8, 12, 16, 24};
  const std::vector<double> energies_db = {0.0, 10.0, 20.0, 30.0};
  int order_bad = 0, mono_bad = 0;
  double mc_worst = 0.0;
  for (double e_db : energies_db) {
    const Scenario scn = desk_table(e_db, 20.0);
    const auto cov = build_covariances(scn);
    const auto stats = group_statistics(cov, scn, 0);
    const cmat s = compute_geb(stats, 4).s;
    const cmat r_h = effective_channel_covariance(cov, s, 0);
    const cmat r_eta = reduce(stats, s).r_eta;
    const ChannelSampler sampler(cov);
    double prev_lm = std::numeric_limits<double>::infinity();
    double prev_ls = prev_lm;
    for (std::size_t t_len : lengths) {
      const auto pilots = build_pilots(scn, 0, t_len, 12);
      const cmat z_lm = lmmse_estimator(pilots, r_h, r_eta);
      const cmat z_ls = ls_estimator(pilots, active_taps_by_user(scn, 0), 4);
      const double lm = nmse(z_lm, pilots, r_h, r_eta);
      const double ls = nmse(z_ls, pilots, r_h, r_eta);
      order_bad += lm > ls;
      mono_bad += lm > prev_lm || ls > prev_ls;
      prev_lm = lm;
      prev_ls = ls;

      double err_lm = 0.0, err_ls = 0.0;
      for (std::uint64_t trial = 0; trial < 5000; ++trial) {
        const auto real = sampler.sample(derive_seed(12012, {trial}));
        const cvec h = stacked_effective_channel(real, s, 0);
        const cvec y = receive_pilots(pilots, real, s, scn, 0, derive_seed(12013, {trial}));
        err_lm += (apply_estimator(z_lm, y) - h).squaredNorm();
        err_ls += (apply_estimator(z_ls, y) - h).squaredNorm();
      }
      // Normalize by the closed-form channel energy, as the closed form does.
      const double tr = r_h.trace().real() * 5000.0;
      mc_worst = std::max({mc_worst, std::abs(err_lm / tr - lm) / lm, std::abs(err_ls / tr - ls) / ls});
    }
  }
  std::ostringstream d;
  d << order_bad << " order and " << mono_bad << " monotonicity violations, MC max rel dev "
    << fmt("%.4f", mc_worst);
  return {order_bad == 0 && mono_bad == 0 && mc_worst <= 0.03, d.str()};
}

Outcome bussgang_validation() {
  Rng rng(1013);
  double worst = 0.0;
  const std::size_t n = 64;
  const std::size_t blocks = (100000 + n - 1) / n;
  for (int c = 0; c < 10; ++c) {
    const Scenario scn = testing::random_scenario(rng, 16, 3, 4, 3);
    const auto cov = build_covariances(scn);
    const auto stats = group_statistics(cov, scn, 0);
    const cmat s = c % 2 ? compute_geb(stats, 3).s : pe_am(compute_geb(stats, 3).s).first.effective();
    const auto rd = reduce(stats, s);
    const ChannelSampler sampler(cov);
    const auto own = sampler.sample(rng()).taps[0];
    const auto eff = effective_channel(s, own, n);
    const double energy = scn.groups[0].symbol_energy;
    const CombinerBank bank = c % 4 < 2 ? zf_combiners(eff) : lmmse_combiners(eff, rd, energy, 2);
    const auto reports = bussgang_reports(eff, bank, rd, energy, 2);

    cvec cross = cvec::Zero(2);
    rvec tx_power = rvec::Zero(2), est_power = rvec::Zero(2);
    for (std::size_t b = 0; b < blocks; ++b) {
      auto real = sampler.sample(derive_seed(13013, {static_cast<std::uint64_t>(c), b}));
      real.taps[0] = own;  // interferers redrawn, own channel held fixed
      const auto out = simulate_block(scn, real, {GroupReceiver{0, s, bank}}, n,
                                      derive_seed(13014, {static_cast<std::uint64_t>(c), b}));
      const cmat& x = out.tx[0];
      const cmat& xh = out.estimates[0];
      for (Eigen::Index m = 0; m < 2; ++m) {
        cross(m) += xh.row(m).dot(x.row(m));  // sum conj(x) * xh
        tx_power(m) += x.row(m).squaredNorm();
        est_power(m) += xh.row(m).squaredNorm();
      }
    }
    for (Eigen::Index m = 0; m < 2; ++m) {
      const cdouble a = std::conj(cross(m)) / tx_power(m);
      const double count = static_cast<double>(blocks * n);
      const double p = tx_power(m) / count;
      const double residual = est_power(m) / count - std::norm(a) * p;
      const double sinr = std::norm(a) * p / residual;
      const double want = reports[static_cast<std::size_t>(m)].sinr;
      worst = std::max(worst, std::abs(sinr - want) / want);
    }
  }
  return {worst <= 0.05, fmt("max rel SINR deviation %.4f over 10 configurations", worst)};
}

Outcome toy_pencils() {
  auto diag = [](double a, double b) {
    cmat m = cmat::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
  };
  const GroupStatistics p1{diag(3.0, 1.0), diag(1.0, 2.0)};
  cmat e1 = cmat::Zero(2, 1);
  e1(0, 0) = 1.0;
  cmat ones = cmat::Constant(2, 1, 1.0 / std::sqrt(2.0));

  cmat rs3(2, 2);
  rs3 << 2.0, cdouble(0.0, 1.0), cdouble(0.0, -1.0), 2.0;
  const GroupStatistics p3{rs3, cmat::Identity(2, 2)};
  cmat s3(2, 1);
  s3 << 1.0 / std::sqrt(2.0), cdouble(0.0, 1.0 / std::sqrt(2.0));

  // tr(S^H Rs S) / tr(S^H Re S) evaluated by hand:
  //   p1, e1: 3 / 1;  p1, (1,1)/sqrt2: 2 / 1.5;  p1, I: 4 / 3;  p3, (1,j)/sqrt2: 1 / 1.
  const double dev = std::max({std::abs(expected_sinr(p1, e1) - 3.0),
                               std::abs(expected_sinr(p1, ones) - 4.0 / 3.0),
                               std::abs(expected_sinr(p1, cmat::Identity(2, 2)) - 4.0 / 3.0),
                               std::abs(expected_sinr(p3, s3) - 1.0)});
  return {dev <= 1e-12, fmt("max abs deviation %.2e", dev)};
}

Outcome determinism() {
  ExperimentConfig cfg = table1_experiment(16);
  cfg.sweep.phi_grid = arange_inclusive(-3.0, 3.0, 1.0);
  cfg.sweep.trials = 5;
  cfg.sweep.design.restarts = 4;
  cfg.sweep.theta_step = 0.5;
  const auto base = std::filesystem::temp_directory_path() / "jsdm_acceptance_determinism";
  std::filesystem::remove_all(base);
  RunOptions opts;
  opts.seed = 424242;
  opts.out_dir = (base / "first").string();
  opts.threads = 1;
  run_experiment(cfg, opts);
  opts.out_dir = (base / "second").string();
  opts.threads = 2;
  run_experiment(cfg, opts);
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  };
  Outcome out{true, "sweep.csv cdf.csv beampattern.csv identical"};
  for (const char* f : {"sweep.csv", "cdf.csv", "beampattern.csv"}) {
    const std::string a = slurp(base / "first" / f);
    if (a.empty() || a != slurp(base / "second" / f)) {
      out = {false, std::string(f) + " differs between runs"};
      break;
    }
  }
  std::filesystem::remove_all(base);
  return out;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace jsdm

int main(int argc, char** argv) {
  using namespace jsdm;
  const std::vector<Criterion> criteria = {
      {1, "geb-optimality", geb_optimality},
      {2, "right-factor-invariance", right_factor_invariance},
      {3, "per-bin-covariance", per_bin_covariance},
      {4, "am-monotonicity", am_monotonicity},
      {5, "phase-extraction-optimality", phase_extraction_optimality},
      {6, "procrustes-optimality", procrustes_optimality},
      {7, "zf-contract", zf_contract},
      {8, "lmmse-vs-zf", lmmse_beats_zf},
      {9, "constrained-ordering", constrained_ordering},
      {10, "subarray-ordering", subarray_ordering},
      {11, "null-property", null_property},
      {12, "estimation-ordering", estimation_ordering},
      {13, "bussgang-validation", bussgang_validation},
      {14, "toy-pencils", toy_pencils},
      {15, "determinism", determinism},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failed = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !out.pass;
    std::printf("%s %2d %-28s %s [%.1fs]\n", out.pass ? "PASS" : "FAIL", c.id, c.name,
                out.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
