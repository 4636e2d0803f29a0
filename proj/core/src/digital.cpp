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


#include "jsdm/digital.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/LU>

namespace jsdm {

EffectiveChannel effective_channel(const cmat& s, const std::vector<cmat>& taps,
                                   std::size_t block_length) {
  const std::size_t l_taps = taps.size();
  if (block_length < l_taps || block_length == 0) {
    std::ostringstream msg;
    msg << "effective_channel: block length " << block_length << " is shorter than " << l_taps
        << " taps";
    throw DimensionError(msg.str());
  }
  if (l_taps == 0) throw DimensionError("effective_channel: no taps");

  EffectiveChannel eff;
  eff.taps.reserve(l_taps);
  std::vector<std::size_t> nonzero;
  for (std::size_t l = 0; l < l_taps; ++l) {
    if (taps[l].rows() != s.rows())
      throw DimensionError("effective_channel: beamformer and channel disagree on antennas");
    eff.taps.push_back(s.adjoint() * taps[l]);
    if (!taps[l].isZero(0.0)) nonzero.push_back(l);
  }

  const Eigen::Index d = s.cols();
  const Eigen::Index k_users = taps.front().cols();
  const double n = static_cast<double>(block_length);
  eff.freq.assign(block_length, cmat::Zero(d, k_users));
  for (std::size_t k = 0; k < block_length; ++k) {
    for (std::size_t l : nonzero) {
      // k*l reduced modulo N keeps the twiddle argument small.
      const double turns = static_cast<double>((k * l) % block_length) / n;
      eff.freq[k] += eff.taps[l] * std::polar(1.0, -2.0 * kPi * turns);
    }
  }
  return eff;
}

EffectiveChannel effective_channel(const cmat& s, const ChannelRealization& real,
                                   std::size_t g_src, std::size_t block_length) {
  if (g_src >= real.taps.size()) throw ValidationError("effective_channel: unknown group id");
  return effective_channel(s, real.taps[g_src], block_length);
}

CombinerBank zf_combiners(const EffectiveChannel& eff) {
  CombinerBank bank;
  bank.w.reserve(eff.freq.size());
  for (std::size_t k = 0; k < eff.freq.size(); ++k) {
    const cmat& lam = eff.freq[k];
    if (lam.cols() > lam.rows()) {
      std::ostringstream msg;
      msg << "zf_combiners: bin " << k << " has " << lam.cols() << " users but only "
          << lam.rows() << " RF chains";
      throw RankError(msg.str());
    }
    const cmat gram = lam.adjoint() * lam;
    Eigen::FullPivLU<cmat> lu(gram);
    lu.setThreshold(1e-12);
    if (!lu.isInvertible()) {
      std::ostringstream msg;
      msg << "zf_combiners: effective channel at bin " << k << " is rank deficient";
      throw RankError(msg.str());
    }
    bank.w.push_back(lam * lu.inverse());
  }
  return bank;
}

CombinerBank lmmse_combiners(const EffectiveChannel& eff, const ReducedStatistics& rd,
                             double symbol_energy, std::size_t users) {
  if (users == 0) throw ValidationError("lmmse_combiners: user count must be positive");
  const double p = symbol_energy / static_cast<double>(users);
  CombinerBank bank;
  bank.w.reserve(eff.freq.size());
  for (const cmat& lam : eff.freq) {
    if (lam.rows() != rd.r_eta.rows())
      throw DimensionError("lmmse_combiners: statistics and channel differ in dimension");
    const cmat r_y = hermitian_part(p * lam * lam.adjoint() + rd.r_eta);
    Eigen::LLT<cmat> llt(r_y);
    if (llt.info() != Eigen::Success)
      throw DefinitenessError("lmmse_combiners: received covariance is not positive definite",
                              0.0);
    bank.w.push_back(llt.solve(p * lam));
  }
  return bank;
}

const char* to_string(CombinerKind kind) {
  switch (kind) {
    case CombinerKind::kZf:
      return "zf";
    case CombinerKind::kLmmse:
      return "lmmse";
  }
  return "?";
}

}  // namespace jsdm
