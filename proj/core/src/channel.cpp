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

#include "jsdm/channel.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace jsdm {

namespace {

constexpr double kDegToRad = kPi / 180.0;

std::string group_field(std::size_t g, const char* field) {
  std::ostringstream s;
  s << "groups[" << g << "]." << field;
  return s.str();
}

std::string user_field(std::size_t g, std::size_t m, const char* field) {
  std::ostringstream s;
  s << "groups[" << g << "].users[" << m << "]." << field;
  return s.str();
}

// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on P_n.
void gauss_legendre(std::size_t n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const double nd = static_cast<double>(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (static_cast<double>(i) + 0.75) / (nd + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double kd = static_cast<double>(k);
        const double p2 = ((2.0 * kd - 1.0) * x * p1 - (kd - 1.0) * p0) / kd;
        p0 = p1;
        p1 = p2;
      }
      dp = nd * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = weights[n - 1 - i] = w;
  }
}

}  // namespace

std::vector<std::size_t> GroupProfile::active_delays() const {
  std::set<std::size_t> delays;
  for (const auto& user : users)
    for (const auto& mpc : user.mpcs) delays.insert(mpc.delay);
  return {delays.begin(), delays.end()};
}

void Scenario::validate() const {
  if (antennas == 0) throw ValidationError("antennas: must be >= 1");
  if (taps == 0) throw ValidationError("taps: must be >= 1");
  if (!(noise_power > 0.0) || !std::isfinite(noise_power))
    throw ValidationError("noise_power: must be positive");
  if (!std::isfinite(phi_deg)) throw ValidationError("phi: must be finite");
  if (groups.empty()) throw ValidationError("groups: at least one group is required");

  std::size_t rf_sum = 0;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const auto& grp = groups[g];
    if (grp.rf_chains < 1 || grp.rf_chains > antennas)
      throw ValidationError(group_field(g, "rf_chains") + ": must satisfy 1 <= D_g <= antennas");
    if (!(grp.symbol_energy > 0.0) || !std::isfinite(grp.symbol_energy))
      throw ValidationError(group_field(g, "symbol_energy") + ": must be positive");
    if (grp.users.empty())
      throw ValidationError(group_field(g, "users") + ": K_g must be >= 1");
    rf_sum += grp.rf_chains;

    for (std::size_t m = 0; m < grp.users.size(); ++m) {
      const auto& user = grp.users[m];
      if (!(user.gain > 0.0) || !std::isfinite(user.gain))
        throw ValidationError(user_field(g, m, "gain") + ": must be positive");
      if (user.mpcs.empty())
        throw ValidationError(user_field(g, m, "mpcs") + ": at least one active cluster");
      std::set<std::size_t> seen;
      for (const auto& mpc : user.mpcs) {
        if (mpc.delay >= taps)
          throw ValidationError(user_field(g, m, "delay") + ": active delay must be < taps");
        if (!seen.insert(mpc.delay).second)
          throw ValidationError(user_field(g, m, "delay") + ": duplicate delay tap");
        if (!(mpc.spread_deg > 0.0) || !std::isfinite(mpc.spread_deg))
          throw ValidationError(user_field(g, m, "spread") + ": must be positive");
        if (!std::isfinite(mpc.aoa_deg))
          throw ValidationError(user_field(g, m, "aoa") + ": must be finite");
      }
    }
  }
  if (total_rf_chains != 0 && rf_sum > total_rf_chains)
    throw ValidationError("total_rf_chains: sum of per-group rf_chains exceeds the total");
}

cvec steering(double theta_deg, std::size_t antennas) {
  const double omega = kPi * std::sin(theta_deg * kDegToRad);
  const double scale = 1.0 / std::sqrt(static_cast<double>(antennas));
  cvec u(static_cast<Eigen::Index>(antennas));
  for (std::size_t m = 0; m < antennas; ++m) {
    u(static_cast<Eigen::Index>(m)) = std::polar(scale, omega * static_cast<double>(m));
  }
  return u;
}

cmat ccm_one_ring(double mu_deg, double delta_deg, double power, std::size_t antennas,
                  std::size_t quadrature_points) {
  if (!(delta_deg > 0.0)) throw ValidationError("ccm_one_ring: spread must be positive");
  if (!(power > 0.0)) throw ValidationError("ccm_one_ring: power must be positive");
  if (quadrature_points < 8)
    throw ValidationError("ccm_one_ring: at least 8 quadrature points are required");

  std::vector<double> nodes, weights;
  gauss_legendre(quadrature_points, nodes, weights);
  const auto n = static_cast<Eigen::Index>(quadrature_points);
  cmat u(static_cast<Eigen::Index>(antennas), n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const double theta = mu_deg + 0.5 * delta_deg * nodes[k];
    // Uniform density 1/delta times the mapped weight delta/2 * w.
    u.col(i) = std::sqrt(0.5 * weights[k]) * steering(theta, antennas);
  }
  cmat r = u * u.adjoint();
  r = hermitian_part(r);
  r *= power / r.trace().real();
  return r;
}

CovarianceSet::CovarianceSet(std::size_t antennas, std::size_t taps,
                             std::vector<std::vector<std::vector<TapCovariance>>> users)
    : antennas_(antennas),
      taps_(taps),
      users_(std::move(users)),
      zero_(cmat::Zero(static_cast<Eigen::Index>(antennas),
                       static_cast<Eigen::Index>(antennas))) {}

const cmat& CovarianceSet::ccm(std::size_t g, std::size_t m, std::size_t l) const {
  if (l >= taps_) throw DimensionError("CovarianceSet::ccm: delay out of range");
  for (const auto& tap : users_.at(g).at(m))
    if (tap.delay == l) return tap.r;
  return zero_;
}

cmat CovarianceSet::group_sum(std::size_t g) const {
  cmat sum = zero_;
  for (const auto& user : users_.at(g))
    for (const auto& tap : user) sum += tap.r;
  return sum;
}

CovarianceSet build_covariances(const Scenario& scn, std::size_t quadrature_points) {
  scn.validate();
  std::vector<std::vector<std::vector<TapCovariance>>> users(scn.groups.size());
  for (std::size_t g = 0; g < scn.groups.size(); ++g) {
    const auto& grp = scn.groups[g];
    const double offset = grp.mobile ? scn.phi_deg : 0.0;
    users[g].resize(grp.users.size());
    for (std::size_t m = 0; m < grp.users.size(); ++m) {
      const auto& user = grp.users[m];
      const double per_mpc = user.gain / static_cast<double>(user.mpcs.size());
      auto& out = users[g][m];
      for (const auto& mpc : user.mpcs) {
        out.push_back({mpc.delay, ccm_one_ring(mpc.aoa_deg + offset, mpc.spread_deg, per_mpc,
                                               scn.antennas, quadrature_points)});
      }
      std::sort(out.begin(), out.end(),
                [](const TapCovariance& a, const TapCovariance& b) { return a.delay < b.delay; });
    }
  }
  return CovarianceSet(scn.antennas, scn.taps, std::move(users));
}

ChannelSampler::ChannelSampler(const CovarianceSet& cov)
    : antennas_(cov.antennas()), taps_(cov.taps()) {
  factors_.resize(cov.group_count());
  active_.resize(cov.group_count());
  for (std::size_t g = 0; g < cov.group_count(); ++g) {
    std::set<std::size_t> delays;
    factors_[g].resize(cov.user_count(g));
    for (std::size_t m = 0; m < cov.user_count(g); ++m) {
      for (const auto& tap : cov.user_taps(g, m)) {
        factors_[g][m].push_back({tap.delay, psd_sqrt(tap.r)});
        delays.insert(tap.delay);
      }
    }
    active_[g].assign(delays.begin(), delays.end());
  }
}

std::vector<cmat> ChannelSampler::sample_group(std::size_t g, Rng& rng) const {
  const auto m_ant = static_cast<Eigen::Index>(antennas_);
  const auto& users = factors_.at(g);
  std::vector<cmat> taps(taps_, cmat::Zero(m_ant, static_cast<Eigen::Index>(users.size())));
  for (std::size_t m = 0; m < users.size(); ++m) {
    for (const auto& factor : users[m]) {
      const cvec z = complex_gaussian_vector(rng, m_ant);
      taps[factor.delay].col(static_cast<Eigen::Index>(m)).noalias() = factor.r * z;
    }
  }
  return taps;
}

ChannelRealization ChannelSampler::sample(std::uint64_t seed) const {
  Rng rng(seed);
  ChannelRealization out;
  out.taps.reserve(factors_.size());
  for (std::size_t g = 0; g < factors_.size(); ++g) out.taps.push_back(sample_group(g, rng));
  out.active = active_;
  return out;
}

ChannelRealization sample_channels(const CovarianceSet& cov, std::uint64_t seed) {
  return ChannelSampler(cov).sample(seed);
}

}  // namespace jsdm
