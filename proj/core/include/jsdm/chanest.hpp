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


#ifndef JSDM_CHANEST_HPP
#define JSDM_CHANEST_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "jsdm/channel.hpp"
#include "jsdm/numerics.hpp"

namespace jsdm {

// Uplink training block of one group. The stacked channel vector orders its
// entries as user-major, then delay, then RF chain: index m*L*D + l*D + d.
struct PilotBlock {
  std::size_t length = 0;  // T
  std::size_t taps = 0;    // L
  double energy = 1.0;     // per-symbol pilot energy
  std::vector<cvec> sequences;  // per user, T symbols of modulus sqrt(energy)
  // T x (K L); entry (i, m L + j) = sequences[m]((i - j) mod T).
  cmat x;

  std::size_t user_count() const { return sequences.size(); }
};

// Random unit-modulus pilots scaled by sqrt(pilot_energy), independent per
// user. pilot_energy defaults to the data symbol energy E_s / K_g. A longer T
// with the same seed extends the shorter sequences.
PilotBlock build_pilots(const Scenario& scn, std::size_t g, std::size_t length,
                        std::uint64_t seed, std::optional<double> pilot_energy = std::nullopt);

// Stacked reduced observation (T * D entries) while group g trains and every
// other group sends random QPSK data.
cvec receive_pilots(const PilotBlock& pilots, const ChannelRealization& real, const cmat& s,
                    const Scenario& scn, std::size_t g, std::uint64_t seed);

// True stacked effective channel of group g (K L D entries).
cvec stacked_effective_channel(const ChannelRealization& real, const cmat& s, std::size_t g);

// Block-diagonal covariance of the stacked effective channel.
cmat effective_channel_covariance(const CovarianceSet& cov, const cmat& s, std::size_t g);

// (X kron I_D) R_h (X kron I_D)^H + I_T kron R_eta.
cmat observation_covariance(const PilotBlock& pilots, const cmat& r_h, const cmat& r_eta);

// Z = R_y^-1 (X kron I_D) R_h; the estimate is Z^H y.
cmat lmmse_estimator(const PilotBlock& pilots, const cmat& r_h, const cmat& r_eta);

// Least squares on the pilot columns of active (user, delay) pairs only.
// Estimates of inactive taps are exactly zero. Throws RankError when the
// pruned pilot matrix is rank deficient.
cmat ls_estimator(const PilotBlock& pilots, const std::vector<std::vector<std::size_t>>& active,
                  std::size_t rf_chains);

// Active delays of each user of group g.
std::vector<std::vector<std::size_t>> active_taps_by_user(const Scenario& scn, std::size_t g);

cvec apply_estimator(const cmat& z, const cvec& y);

// Closed-form normalized mean-square error of the estimate Z^H y.
double nmse(const cmat& z, const PilotBlock& pilots, const cmat& r_h, const cmat& r_eta);

}  // namespace jsdm

#endif  // JSDM_CHANEST_HPP
