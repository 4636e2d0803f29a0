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

#include "jsdm/constrained.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "jsdm/random.hpp"

namespace jsdm {

namespace {

constexpr double kDegToRad = kPi / 180.0;

double wrap_angle(double x) {
  x = std::remainder(x, 2.0 * kPi);
  return x;
}

// Spatial frequency of DFT column n in the steering convention exp(j m w).
double dft_frequency(std::size_t n, std::size_t antennas) {
  return wrap_angle(-2.0 * kPi * static_cast<double>(n) / static_cast<double>(antennas));
}

cmat dft_matrix_columns(std::size_t antennas, const std::vector<std::size_t>& columns) {
  const auto m = static_cast<Eigen::Index>(antennas);
  const double scale = 1.0 / std::sqrt(static_cast<double>(antennas));
  cmat q(m, static_cast<Eigen::Index>(columns.size()));
  for (std::size_t c = 0; c < columns.size(); ++c) {
    for (Eigen::Index i = 0; i < m; ++i) {
      // Reduce the exponent modulo M before scaling to keep the phase exact.
      const auto k = (static_cast<std::size_t>(i) * columns[c]) % antennas;
      q(i, static_cast<Eigen::Index>(c)) =
          std::polar(scale, -2.0 * kPi * static_cast<double>(k) / static_cast<double>(antennas));
    }
  }
  return q;
}

bool converged(double previous, double current, double tol, double floor) {
  if (current <= floor) return true;
  return std::abs(previous - current) < tol * previous;
}

cmat identity(Eigen::Index d) { return cmat::Identity(d, d); }

bool same_support(const cmat& a, const cmat& b) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if ((a(i, j) == cdouble(0.0, 0.0)) != (b(i, j) == cdouble(0.0, 0.0))) return false;
  return true;
}

ConnectionMask full_mask(Eigen::Index m, Eigen::Index d) { return ConnectionMask::Ones(m, d); }

std::vector<Eigen::Index> chain_of_antenna(const ConnectionMask& mask) {
  std::vector<Eigen::Index> chain(static_cast<std::size_t>(mask.rows()));
  for (Eigen::Index i = 0; i < mask.rows(); ++i) {
    for (Eigen::Index j = 0; j < mask.cols(); ++j) {
      if (mask(i, j) != 0) chain[static_cast<std::size_t>(i)] = j;
    }
  }
  return chain;
}

cmat partial_beamformer(const rvec& phases, const std::vector<Eigen::Index>& chain,
                        Eigen::Index d) {
  const auto m = phases.size();
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  cmat s_c = cmat::Zero(m, d);
  for (Eigen::Index i = 0; i < m; ++i) {
    s_c(i, chain[static_cast<std::size_t>(i)]) = std::polar(scale, phases(i));
  }
  return s_c;
}

}  // namespace

std::vector<std::size_t> dft_column_indices(const Scenario& scn, std::size_t g,
                                            std::size_t rf_chains) {
  if (g >= scn.groups.size()) throw ValidationError("dft_beamformer: unknown group id");
  const std::size_t m = scn.antennas;
  if (rf_chains < 1 || rf_chains > m)
    throw DimensionError("dft_beamformer: rf_chains must be in [1, antennas]");

  const auto& grp = scn.groups[g];
  const double offset = grp.mobile ? scn.phi_deg : 0.0;

  // Cluster mean AoA, averaged over the users active at that delay.
  std::map<std::size_t, std::pair<double, std::size_t>> clusters;
  for (const auto& user : grp.users) {
    for (const auto& mpc : user.mpcs) {
      auto& acc = clusters[mpc.delay];
      acc.first += mpc.aoa_deg + offset;
      acc.second += 1;
    }
  }

  struct Pick {
    std::size_t column;
    double distance;
    std::size_t order;
  };
  std::vector<Pick> picks;
  for (const auto& [delay, acc] : clusters) {
    const double mean_aoa = acc.first / static_cast<double>(acc.second);
    const double omega = kPi * std::sin(mean_aoa * kDegToRad);
    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n < m; ++n) {
      const double dist = std::abs(wrap_angle(dft_frequency(n, m) - omega));
      if (dist < best_dist) {
        best_dist = dist;
        best = n;
      }
    }
    const bool duplicate = std::any_of(picks.begin(), picks.end(),
                                       [&](const Pick& p) { return p.column == best; });
    if (!duplicate) picks.push_back({best, best_dist, picks.size()});
  }

  if (picks.size() > rf_chains) {
    std::stable_sort(picks.begin(), picks.end(),
                     [](const Pick& a, const Pick& b) { return a.distance < b.distance; });
    picks.resize(rf_chains);
    std::sort(picks.begin(), picks.end(),
              [](const Pick& a, const Pick& b) { return a.order < b.order; });
  }

  std::vector<std::size_t> columns;
  for (const auto& p : picks) columns.push_back(p.column);
  const std::vector<std::size_t> bases = columns;

  // Adjacent fill: offsets +1, -1, +2, -2, ... round-robin over the clusters.
  for (std::size_t step = 1; columns.size() < rf_chains; ++step) {
    for (int sign : {+1, -1}) {
      for (std::size_t base : bases) {
        if (columns.size() >= rf_chains) break;
        const std::size_t shift = step % m;
        const std::size_t candidate = sign > 0 ? (base + shift) % m : (base + m - shift) % m;
        if (std::find(columns.begin(), columns.end(), candidate) == columns.end()) {
          columns.push_back(candidate);
        }
      }
    }
  }
  return columns;
}

cmat procrustes_unitary(const cmat& a, const cmat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("procrustes_unitary: operands differ in shape");
  const SvdResult f = svd(a.adjoint() * b);
  return f.u * f.v.adjoint();
}

ConstrainedBeamformer dft_beamformer(const Scenario& scn, std::size_t g, std::size_t rf_chains) {
  const auto columns = dft_column_indices(scn, g, rf_chains);
  const auto m = static_cast<Eigen::Index>(scn.antennas);
  const auto d = static_cast<Eigen::Index>(rf_chains);
  return {dft_matrix_columns(scn.antennas, columns), identity(d), full_mask(m, d)};
}

ConstrainedBeamformer phase_extraction(const cmat& s_geb) {
  require_finite(s_geb, "phase_extraction");
  const auto m = s_geb.rows();
  const auto d = s_geb.cols();
  return {unit_modulus(s_geb, 1.0 / std::sqrt(static_cast<double>(m))), identity(d),
          full_mask(m, d)};
}

ConstrainedBeamformer phase_extraction(const UnconstrainedBeamformer& geb) {
  return phase_extraction(geb.s);
}

std::pair<ConstrainedBeamformer, AmTrace> pe_am(const cmat& s_geb, const AmOptions& opts) {
  if (!(opts.tol > 0.0)) throw ValidationError("pe_am: tol must be positive");
  ConstrainedBeamformer bf = phase_extraction(s_geb);
  const double scale = 1.0 / std::sqrt(static_cast<double>(s_geb.rows()));
  const double floor = 1e-15 * std::max(1.0, s_geb.norm());
  const cmat eye = identity(s_geb.cols());

  AmTrace trace;
  trace.residuals.push_back((s_geb - bf.s_c).norm());
  for (std::size_t it = 1; it <= opts.max_iter; ++it) {
    bf.s_cm = procrustes_unitary(bf.s_c, s_geb);
    trace.unitarity.push_back((bf.s_cm.adjoint() * bf.s_cm - eye).norm());

    const cmat rotated = s_geb * bf.s_cm.adjoint();
    bf.s_c = unit_modulus(rotated, scale);
    const double residual = (rotated - bf.s_c).norm();
    const double previous = trace.residuals.back();
    trace.residuals.push_back(residual);
    trace.iterations = it;
    if (converged(previous, residual, opts.tol, floor)) {
      trace.converged = true;
      break;
    }
  }
  return {std::move(bf), std::move(trace)};
}

ConnectionMask ordered_mask(std::size_t antennas, std::size_t rf_chains) {
  if (rf_chains == 0 || antennas % rf_chains != 0) {
    std::ostringstream msg;
    msg << "ordered_mask: " << rf_chains << " RF chains do not divide " << antennas
        << " antennas";
    throw ValidationError(msg.str());
  }
  const std::size_t block = antennas / rf_chains;
  ConnectionMask mask = ConnectionMask::Zero(static_cast<Eigen::Index>(antennas),
                                             static_cast<Eigen::Index>(rf_chains));
  for (std::size_t i = 0; i < antennas; ++i)
    mask(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i / block)) = 1;
  return mask;
}

ConnectionMask interlaced_mask(std::size_t antennas, std::size_t rf_chains) {
  if (rf_chains == 0 || antennas % rf_chains != 0) {
    std::ostringstream msg;
    msg << "interlaced_mask: " << rf_chains << " RF chains do not divide " << antennas
        << " antennas";
    throw ValidationError(msg.str());
  }
  ConnectionMask mask = ConnectionMask::Zero(static_cast<Eigen::Index>(antennas),
                                             static_cast<Eigen::Index>(rf_chains));
  for (std::size_t i = 0; i < antennas; ++i)
    mask(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i % rf_chains)) = 1;
  return mask;
}

void check_partial_connection(const ConnectionMask& mask) {
  for (Eigen::Index i = 0; i < mask.rows(); ++i) {
    int count = 0;
    for (Eigen::Index j = 0; j < mask.cols(); ++j) {
      if (mask(i, j) != 0 && mask(i, j) != 1)
        throw ConstraintError("connection mask entries must be 0 or 1");
      count += mask(i, j);
    }
    if (count != 1) {
      std::ostringstream msg;
      msg << "connection mask: antenna " << i << " is connected to " << count
          << " RF chains (exactly one required)";
      throw ConstraintError(msg.str());
    }
  }
  for (Eigen::Index j = 0; j < mask.cols(); ++j) {
    if (mask.col(j).sum() < 1) {
      std::ostringstream msg;
      msg << "connection mask: RF chain " << j << " has no antenna";
      throw ConstraintError(msg.str());
    }
  }
}

std::pair<ConstrainedBeamformer, AmTrace> fixed_subarray(const cmat& s_geb,
                                                         const ConnectionMask& mask,
                                                         const std::optional<rvec>& initial_phases,
                                                         std::uint64_t seed,
                                                         const AmOptions& opts) {
  if (mask.rows() != s_geb.rows() || mask.cols() != s_geb.cols())
    throw DimensionError("fixed_subarray: mask and beamformer sizes differ");
  if (!(opts.tol > 0.0)) throw ValidationError("fixed_subarray: tol must be positive");
  require_finite(s_geb, "fixed_subarray");
  check_partial_connection(mask);

  const Eigen::Index m = s_geb.rows();
  const Eigen::Index d = s_geb.cols();
  const auto chain = chain_of_antenna(mask);
  const rvec counts = mask.cast<double>().colwise().sum().transpose();

  rvec phases(m);
  if (initial_phases) {
    if (initial_phases->size() != m)
      throw DimensionError("fixed_subarray: initial phases must have one entry per antenna");
    phases = *initial_phases;
  } else {
    Rng rng(seed);
    for (Eigen::Index i = 0; i < m; ++i) phases(i) = uniform_phase(rng);
  }

  const double floor = 1e-15 * std::max(1.0, s_geb.norm());
  const double md = static_cast<double>(m);
  ConstrainedBeamformer bf{partial_beamformer(phases, chain, d), cmat::Zero(d, d), mask};
  AmTrace trace;
  double previous = std::numeric_limits<double>::infinity();
  for (std::size_t it = 1; it <= opts.max_iter; ++it) {
    // S_c^H S_c = diag(m_j / M): the LS solution is a per-row weighted sum.
    bf.s_cm.setZero();
    for (Eigen::Index i = 0; i < m; ++i) {
      const Eigen::Index j = chain[static_cast<std::size_t>(i)];
      bf.s_cm.row(j) += std::conj(bf.s_c(i, j)) * s_geb.row(i);
    }
    for (Eigen::Index j = 0; j < d; ++j) bf.s_cm.row(j) *= md / counts(j);

    for (Eigen::Index i = 0; i < m; ++i) {
      const Eigen::Index j = chain[static_cast<std::size_t>(i)];
      phases(i) = phase_of(s_geb.row(i).dot(bf.s_cm.row(j)));
    }
    // Eigen's dot conjugates the first argument; the phase above is of
    // sum_k conj(S_geb(i,k)) S_cm(j,k), so negate it.
    phases = -phases;
    bf.s_c = partial_beamformer(phases, chain, d);

    const double residual = (s_geb - bf.s_c * bf.s_cm).norm();
    trace.residuals.push_back(residual);
    trace.iterations = it;
    if (converged(previous, residual, opts.tol, floor)) {
      trace.converged = true;
      break;
    }
    previous = residual;
  }
  return {std::move(bf), std::move(trace)};
}

std::pair<cmat, AmTrace> dynamic_connection(const cmat& s_geb, std::uint64_t seed,
                                            const AmOptions& opts) {
  if (!(opts.tol > 0.0)) throw ValidationError("dynamic_connection: tol must be positive");
  require_finite(s_geb, "dynamic_connection");
  const Eigen::Index m = s_geb.rows();
  const Eigen::Index d = s_geb.cols();

  Rng rng(seed);
  std::uniform_int_distribution<Eigen::Index> pick_chain(0, d - 1);
  cmat candidate = cmat::Zero(m, d);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index j = pick_chain(rng);
    candidate(i, j) = std::polar(1.0, uniform_phase(rng));
  }

  const double floor = 1e-15 * std::max(1.0, static_cast<double>(m));
  const cmat eye = identity(d);
  AmTrace trace;
  double previous = std::numeric_limits<double>::infinity();
  for (std::size_t it = 1; it <= opts.max_iter; ++it) {
    const cmat rotation = procrustes_unitary(s_geb, candidate);
    trace.unitarity.push_back((rotation.adjoint() * rotation - eye).norm());

    const cmat rotated = s_geb * rotation;
    const cmat before = candidate;
    candidate.setZero();
    for (Eigen::Index i = 0; i < m; ++i) {
      Eigen::Index best = 0;
      double best_mag = std::abs(rotated(i, 0));
      for (Eigen::Index j = 1; j < d; ++j) {
        const double mag = std::abs(rotated(i, j));
        if (mag > best_mag) {
          best_mag = mag;
          best = j;
        }
      }
      candidate(i, best) = std::polar(1.0, phase_of(rotated(i, best)));
    }

    const double residual = (rotated - candidate).norm();
    trace.residuals.push_back(residual);
    trace.iterations = it;
    // Distinct supports can tie in residual, so a stop also needs a repeated support.
    if (converged(previous, residual, opts.tol, floor) && same_support(before, candidate)) {
      trace.converged = true;
      break;
    }
    previous = residual;
  }
  return {std::move(candidate), std::move(trace)};
}

bool every_chain_connected(const cmat& candidate) {
  for (Eigen::Index j = 0; j < candidate.cols(); ++j) {
    if (candidate.col(j).cwiseAbs().maxCoeff() == 0.0) return false;
  }
  return true;
}

std::pair<ConstrainedBeamformer, AmTrace> dynamic_subarray(const cmat& s_geb,
                                                           const GroupStatistics& stats,
                                                           std::size_t restarts,
                                                           std::uint64_t seed,
                                                           const AmOptions& opts) {
  if (restarts < 1) throw ValidationError("dynamic_subarray: restarts must be >= 1");

  std::optional<std::size_t> best;
  double best_score = 0.0;
  cmat best_candidate;
  for (std::size_t t = 0; t < restarts; ++t) {
    auto [candidate, run] = dynamic_connection(s_geb, seed + t, opts);
    if (!every_chain_connected(candidate)) continue;  // scores 0
    const double score = expected_sinr(stats, candidate);
    if (!best || score > best_score) {
      best = t;
      best_score = score;
      best_candidate = std::move(candidate);
    }
  }
  if (!best) {
    std::ostringstream msg;
    msg << "dynamic_subarray: all " << restarts
        << " connection searches left an RF chain unconnected; increase the restart count";
    throw ExhaustionError(msg.str());
  }

  const Eigen::Index m = s_geb.rows();
  ConnectionMask mask = ConnectionMask::Zero(m, s_geb.cols());
  rvec phases = rvec::Zero(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < s_geb.cols(); ++j) {
      if (best_candidate(i, j) != cdouble(0.0, 0.0)) {
        mask(i, j) = 1;
        phases(i) = std::arg(best_candidate(i, j));
      }
    }
  }

  auto [bf, trace] = fixed_subarray(s_geb, mask, phases, seed, opts);
  trace.candidate_score = best_score;
  trace.refined_score = expected_sinr(stats, bf.effective());
  trace.chosen_restart = best;
  return {std::move(bf), std::move(trace)};
}

}  // namespace jsdm
