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

#ifndef JSDM_CHANNEL_HPP
#define JSDM_CHANNEL_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "jsdm/numerics.hpp"
#include "jsdm/random.hpp"

namespace jsdm {

inline constexpr std::size_t kDefaultQuadraturePoints = 200;

// One multipath cluster of a user: delay tap, mean angle of arrival and
// angular spread (both in degrees, uniform power profile).
struct Mpc {
  std::size_t delay = 0;
  double aoa_deg = 0.0;
  double spread_deg = 2.0;
};

struct UserProfile {
  double gain = 1.0;  // total channel power over all taps
  std::vector<Mpc> mpcs;
};

struct GroupProfile {
  std::size_t rf_chains = 1;
  double symbol_energy = 1.0;  // linear, total over the group's users
  bool mobile = false;         // mean AoAs shift by Scenario::phi_deg
  std::vector<UserProfile> users;

  std::size_t user_count() const { return users.size(); }
  // Sorted union of the users' delay taps.
  std::vector<std::size_t> active_delays() const;
};

struct Scenario {
  std::size_t antennas = 0;
  std::size_t taps = 1;
  double noise_power = 1.0;
  double phi_deg = 0.0;
  // Upper bound on the sum of per-group RF chains; 0 means no bound.
  std::size_t total_rf_chains = 0;
  std::vector<GroupProfile> groups;

  std::size_t group_count() const { return groups.size(); }
  // Throws ValidationError naming the offending field.
  void validate() const;
};

// Unit-norm ULA steering vector with half-wavelength spacing:
// entry m = exp(j m pi sin(theta)) / sqrt(M).
cvec steering(double theta_deg, std::size_t antennas);

// One-ring covariance: Gauss-Legendre quadrature (quadrature_points nodes) of
// the uniform power profile over [mu - delta/2, mu + delta/2], rescaled to
// trace == power.
cmat ccm_one_ring(double mu_deg, double delta_deg, double power, std::size_t antennas,
                  std::size_t quadrature_points = kDefaultQuadraturePoints);

struct TapCovariance {
  std::size_t delay = 0;
  cmat r;
};

// Per-user, per-delay covariance matrices. Only active taps are stored; ccm()
// returns the zero matrix for inactive taps.
class CovarianceSet {
 public:
  CovarianceSet() = default;
  CovarianceSet(std::size_t antennas, std::size_t taps,
                std::vector<std::vector<std::vector<TapCovariance>>> users);

  std::size_t antennas() const { return antennas_; }
  std::size_t taps() const { return taps_; }
  std::size_t group_count() const { return users_.size(); }
  std::size_t user_count(std::size_t g) const { return users_.at(g).size(); }

  const std::vector<TapCovariance>& user_taps(std::size_t g, std::size_t m) const {
    return users_.at(g).at(m);
  }
  const cmat& ccm(std::size_t g, std::size_t m, std::size_t l) const;

  // Sum over taps and users of one group's covariances.
  cmat group_sum(std::size_t g) const;

 private:
  std::size_t antennas_ = 0;
  std::size_t taps_ = 0;
  std::vector<std::vector<std::vector<TapCovariance>>> users_;
  cmat zero_;
};

// Builds every user's tap covariances. Each user's gain is split equally over
// its clusters; mobile groups have their AoAs offset by scn.phi_deg.
CovarianceSet build_covariances(const Scenario& scn,
                                std::size_t quadrature_points = kDefaultQuadraturePoints);

struct ChannelRealization {
  // taps[g][l] is M x K_g; column m is user m's channel at delay l.
  std::vector<std::vector<cmat>> taps;
  // Delays that may hold nonzero taps, per group.
  std::vector<std::vector<std::size_t>> active;
};

// Draws h = R^{1/2} z per user and tap. Square roots are computed once at
// construction so repeated draws only cost matrix-vector products.
class ChannelSampler {
 public:
  explicit ChannelSampler(const CovarianceSet& cov);

  ChannelRealization sample(std::uint64_t seed) const;
  // Fresh draw for one group (taps[l], M x K_g) from an external stream.
  std::vector<cmat> sample_group(std::size_t g, Rng& rng) const;

  std::size_t group_count() const { return factors_.size(); }
  const std::vector<std::size_t>& active_delays(std::size_t g) const { return active_.at(g); }

 private:
  std::size_t antennas_;
  std::size_t taps_;
  std::vector<std::vector<std::vector<TapCovariance>>> factors_;
  std::vector<std::vector<std::size_t>> active_;
};

ChannelRealization sample_channels(const CovarianceSet& cov, std::uint64_t seed);

}  // namespace jsdm

#endif  // JSDM_CHANNEL_HPP
