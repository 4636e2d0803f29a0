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


#include "jsdm/chanest.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include "jsdm/random.hpp"

namespace jsdm {

namespace {

cmat kron_identity(const cmat& a, Eigen::Index d) {
  cmat out = cmat::Zero(a.rows() * d, a.cols() * d);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != cdouble(0.0, 0.0))
        out.block(i * d, j * d, d, d).diagonal().setConstant(a(i, j));
  return out;
}

void check_group(const Scenario& scn, std::size_t g, const char* who) {
  if (g >= scn.groups.size()) {
    std::ostringstream msg;
    msg << who << ": unknown group id " << g;
    throw ValidationError(msg.str());
  }
}

}  // namespace

PilotBlock build_pilots(const Scenario& scn, std::size_t g, std::size_t length,
                        std::uint64_t seed, std::optional<double> pilot_energy) {
  check_group(scn, g, "build_pilots");
  if (length == 0) throw ValidationError("build_pilots: pilot length must be >= 1");
  const auto& grp = scn.groups[g];
  const double energy =
      pilot_energy.value_or(grp.symbol_energy / static_cast<double>(grp.user_count()));
  if (!(energy > 0.0)) throw ValidationError("build_pilots: pilot energy must be positive");

  PilotBlock out;
  out.length = length;
  out.taps = scn.taps;
  out.energy = energy;
  const std::size_t k_users = grp.user_count();
  const auto t_len = static_cast<Eigen::Index>(length);
  const auto l_taps = static_cast<Eigen::Index>(scn.taps);
  out.x.resize(t_len, static_cast<Eigen::Index>(k_users) * l_taps);
  const double amp = std::sqrt(energy);
  for (std::size_t m = 0; m < k_users; ++m) {
    Rng rng(derive_seed(seed, {g, m}));
    cvec seq(t_len);
    for (Eigen::Index i = 0; i < t_len; ++i) seq(i) = std::polar(amp, uniform_phase(rng));
    for (Eigen::Index i = 0; i < t_len; ++i) {
      for (Eigen::Index j = 0; j < l_taps; ++j) {
        const Eigen::Index src = ((i - j) % t_len + t_len) % t_len;
        out.x(i, static_cast<Eigen::Index>(m) * l_taps + j) = seq(src);
      }
    }
    out.sequences.push_back(std::move(seq));
  }
  return out;
}

cvec receive_pilots(const PilotBlock& pilots, const ChannelRealization& real, const cmat& s,
                    const Scenario& scn, std::size_t g, std::uint64_t seed) {
  check_group(scn, g, "receive_pilots");
  const auto d = s.cols();
  const auto t_len = static_cast<Eigen::Index>(pilots.length);
  const auto l_taps = static_cast<Eigen::Index>(pilots.taps);
  const auto m_ant = static_cast<Eigen::Index>(scn.antennas);
  if (s.rows() != m_ant) throw DimensionError("receive_pilots: beamformer has wrong row count");
  if (pilots.user_count() != scn.groups[g].user_count())
    throw DimensionError("receive_pilots: pilot block built for a different group size");

  Rng rng(seed);
  cmat y = cmat::Zero(m_ant, t_len);  // unreduced, column t
  for (std::size_t l : real.active[g]) {
    const cmat& h = real.taps[g][l];
    for (Eigen::Index t = 0; t < t_len; ++t) {
      for (std::size_t m = 0; m < pilots.user_count(); ++m) {
        y.col(t) += h.col(static_cast<Eigen::Index>(m)) *
                    pilots.x(t, static_cast<Eigen::Index>(m) * l_taps + static_cast<Eigen::Index>(l));
      }
    }
  }
  for (std::size_t h = 0; h < scn.groups.size(); ++h) {
    if (h == g) continue;
    const auto& grp = scn.groups[h];
    const auto k_users = static_cast<Eigen::Index>(grp.user_count());
    const double energy = grp.symbol_energy / static_cast<double>(grp.user_count());
    // Data symbols at times -(L-1) .. T-1; column t + L - 1 holds time t.
    cmat x(k_users, t_len + l_taps - 1);
    for (Eigen::Index c = 0; c < x.cols(); ++c)
      for (Eigen::Index u = 0; u < k_users; ++u) x(u, c) = qpsk_symbol(rng, energy);
    for (std::size_t l : real.active[h]) {
      const cmat& hl = real.taps[h][l];
      for (Eigen::Index t = 0; t < t_len; ++t)
        y.col(t).noalias() += hl * x.col(t + l_taps - 1 - static_cast<Eigen::Index>(l));
    }
  }
  y += complex_gaussian_matrix(rng, m_ant, t_len, scn.noise_power);

  const cmat z = s.adjoint() * y;
  cvec out(t_len * d);
  for (Eigen::Index t = 0; t < t_len; ++t) out.segment(t * d, d) = z.col(t);
  return out;
}

cvec stacked_effective_channel(const ChannelRealization& real, const cmat& s, std::size_t g) {
  if (g >= real.taps.size()) throw ValidationError("stacked_effective_channel: unknown group id");
  const auto& taps = real.taps[g];
  const auto l_taps = static_cast<Eigen::Index>(taps.size());
  const auto k_users = taps.front().cols();
  const auto d = s.cols();
  cvec out(k_users * l_taps * d);
  for (Eigen::Index l = 0; l < l_taps; ++l) {
    const cmat eff = s.adjoint() * taps[static_cast<std::size_t>(l)];
    for (Eigen::Index m = 0; m < k_users; ++m) out.segment((m * l_taps + l) * d, d) = eff.col(m);
  }
  return out;
}

cmat effective_channel_covariance(const CovarianceSet& cov, const cmat& s, std::size_t g) {
  if (g >= cov.group_count())
    throw ValidationError("effective_channel_covariance: unknown group id");
  const auto d = s.cols();
  const auto l_taps = static_cast<Eigen::Index>(cov.taps());
  const auto k_users = static_cast<Eigen::Index>(cov.user_count(g));
  cmat r_h = cmat::Zero(k_users * l_taps * d, k_users * l_taps * d);
  for (Eigen::Index m = 0; m < k_users; ++m) {
    for (const auto& tap : cov.user_taps(g, static_cast<std::size_t>(m))) {
      const Eigen::Index off = (m * l_taps + static_cast<Eigen::Index>(tap.delay)) * d;
      r_h.block(off, off, d, d) = hermitian_part(s.adjoint() * tap.r * s);
    }
  }
  return r_h;
}

cmat observation_covariance(const PilotBlock& pilots, const cmat& r_h, const cmat& r_eta) {
  const auto d = r_eta.rows();
  const cmat a = kron_identity(pilots.x, d);
  if (a.cols() != r_h.rows())
    throw DimensionError("observation_covariance: pilot matrix and R_h disagree");
  cmat r_y = a * r_h * a.adjoint();
  const auto t_len = static_cast<Eigen::Index>(pilots.length);
  for (Eigen::Index t = 0; t < t_len; ++t) r_y.block(t * d, t * d, d, d) += r_eta;
  return hermitian_part(r_y);
}

cmat lmmse_estimator(const PilotBlock& pilots, const cmat& r_h, const cmat& r_eta) {
  const cmat r_y = observation_covariance(pilots, r_h, r_eta);
  const cmat r_yh = kron_identity(pilots.x, r_eta.rows()) * r_h;
  Eigen::LLT<cmat> llt(r_y);
  if (llt.info() != Eigen::Success)
    throw DefinitenessError("lmmse_estimator: observation covariance is not positive definite",
                            0.0);
  return llt.solve(r_yh);
}

cmat ls_estimator(const PilotBlock& pilots, const std::vector<std::vector<std::size_t>>& active,
                  std::size_t rf_chains) {
  if (active.size() != pilots.user_count())
    throw DimensionError("ls_estimator: active taps given for a different user count");
  const auto l_taps = static_cast<Eigen::Index>(pilots.taps);
  std::vector<Eigen::Index> keep;
  for (std::size_t m = 0; m < active.size(); ++m) {
    for (std::size_t l : active[m]) {
      if (l >= pilots.taps) throw DimensionError("ls_estimator: active delay out of range");
      keep.push_back(static_cast<Eigen::Index>(m) * l_taps + static_cast<Eigen::Index>(l));
    }
  }
  const auto t_len = pilots.x.rows();
  const auto n_keep = static_cast<Eigen::Index>(keep.size());
  if (n_keep > t_len) {
    std::ostringstream msg;
    msg << "ls_estimator: " << n_keep << " active taps cannot be resolved with " << t_len
        << " pilot symbols; increase the pilot length";
    throw RankError(msg.str());
  }
  cmat xp(t_len, n_keep);
  for (Eigen::Index c = 0; c < n_keep; ++c) xp.col(c) = pilots.x.col(keep[static_cast<std::size_t>(c)]);

  Eigen::FullPivLU<cmat> lu(xp.adjoint() * xp);
  lu.setThreshold(1e-10);
  if (!lu.isInvertible()) {
    throw RankError(
        "ls_estimator: pruned pilot matrix is rank deficient; increase the pilot length");
  }
  const cmat pruned = xp * lu.inverse();  // T x n_keep
  cmat full = cmat::Zero(t_len, pilots.x.cols());
  for (Eigen::Index c = 0; c < n_keep; ++c) full.col(keep[static_cast<std::size_t>(c)]) = pruned.col(c);
  return kron_identity(full, static_cast<Eigen::Index>(rf_chains));
}

std::vector<std::vector<std::size_t>> active_taps_by_user(const Scenario& scn, std::size_t g) {
  check_group(scn, g, "active_taps_by_user");
  std::vector<std::vector<std::size_t>> out;
  for (const auto& user : scn.groups[g].users) {
    std::vector<std::size_t> delays;
    for (const auto& mpc : user.mpcs) delays.push_back(mpc.delay);
    std::sort(delays.begin(), delays.end());
    out.push_back(std::move(delays));
  }
  return out;
}

cvec apply_estimator(const cmat& z, const cvec& y) {
  if (z.rows() != y.size()) throw DimensionError("apply_estimator: size mismatch");
  return z.adjoint() * y;
}

double nmse(const cmat& z, const PilotBlock& pilots, const cmat& r_h, const cmat& r_eta) {
  const double tr_h = r_h.trace().real();
  if (!(tr_h > 0.0)) throw Error("nmse: channel covariance has zero trace");
  const cmat r_y = observation_covariance(pilots, r_h, r_eta);
  const cmat r_yh = kron_identity(pilots.x, r_eta.rows()) * r_h;
  if (z.rows() != r_y.rows() || z.cols() != r_h.cols())
    throw DimensionError("nmse: estimator has the wrong shape");
  const double quad = (z.adjoint() * r_y * z).trace().real();
  const double cross = (z.adjoint() * r_yh).trace().real();
  return (tr_h + quad - 2.0 * cross) / tr_h;
}

}  // namespace jsdm
