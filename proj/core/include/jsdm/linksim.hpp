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


#ifndef JSDM_LINKSIM_HPP
#define JSDM_LINKSIM_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "jsdm/channel.hpp"
#include "jsdm/digital.hpp"
#include "jsdm/statistics.hpp"

namespace jsdm {

inline constexpr std::size_t kDefaultBlockLength = 64;

struct UserLinkReport {
  cdouble a;              // Bussgang gain of the user's own symbol
  double b_power = 0.0;   // residual interference-plus-noise power
  double sinr = 0.0;      // linear
  double capacity = 0.0;  // bits/s/Hz
};

// Semi-analytic output SINR of user m after per-bin combining and the inverse
// DFT. rd.r_eta is the reduced interference-plus-noise covariance.
UserLinkReport bussgang_report(const EffectiveChannel& eff, const CombinerBank& combiners,
                               const ReducedStatistics& rd, double symbol_energy,
                               std::size_t users, std::size_t m);

std::vector<UserLinkReport> bussgang_reports(const EffectiveChannel& eff,
                                             const CombinerBank& combiners,
                                             const ReducedStatistics& rd, double symbol_energy,
                                             std::size_t users);

// Receiver chain of one group: analog stage S (M x D) and per-bin combiners.
struct GroupReceiver {
  std::size_t group = 0;
  cmat s;
  CombinerBank combiners;
};

struct BlockOutput {
  std::vector<cmat> tx;         // per group, K_g x N transmitted symbols
  std::vector<cmat> estimates;  // per receiver, K_g x N soft estimates
};

// One SC-FDE block: QPSK with per-user energy E_s/K_g from every group,
// cyclic convolution through the taps, AWGN of power N_0 per antenna, analog
// stage, normalized DFT, per-bin combining and inverse DFT.
BlockOutput simulate_block(const Scenario& scn, const ChannelRealization& real,
                           const std::vector<GroupReceiver>& receivers, std::size_t block_length,
                           std::uint64_t seed);

struct ErgodicResult {
  rmat capacity;   // trials x K, per-trial capacity
  rvec mean;       // per user
  rvec std_error;  // per user, standard error of the mean
};

// Monte Carlo over the target group's channel draws with a fixed analog
// stage s. Trial t uses seed derive_seed(seed, {t}), so different beamformers
// evaluated with the same seed see the same channels.
ErgodicResult ergodic_capacity(const ChannelSampler& sampler, const GroupStatistics& stats,
                               const Scenario& scn, std::size_t g, const cmat& s,
                               CombinerKind kind, std::size_t trials, std::uint64_t seed,
                               std::size_t block_length = kDefaultBlockLength);

// Mean and standard error of the columns of a trials x K table.
void summarize_columns(const rmat& samples, rvec& mean, rvec& std_error);

}  // namespace jsdm

#endif  // JSDM_LINKSIM_HPP
