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


#include "jsdm/linksim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "jsdm/random.hpp"

namespace jsdm {

namespace {

// Unitary DFT matrix F(k, n) = exp(-j 2 pi k n / N) / sqrt(N).
cmat unitary_dft(std::size_t n) {
  const auto size = static_cast<Eigen::Index>(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  cmat f(size, size);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t t = 0; t < n; ++t) {
      const double turns = static_cast<double>((k * t) % n) / static_cast<double>(n);
      f(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(t)) =
          std::polar(scale, -2.0 * kPi * turns);
    }
  }
  return f;
}

}  // namespace

UserLinkReport bussgang_report(const EffectiveChannel& eff, const CombinerBank& combiners,
                               const ReducedStatistics& rd, double symbol_energy,
                               std::size_t users, std::size_t m) {
  const std::size_t n = eff.block_length();
  if (combiners.block_length() != n)
    throw DimensionError("bussgang_report: combiners and channel differ in block length");
  if (n == 0) throw DimensionError("bussgang_report: empty block");
  if (users == 0 || m >= users) throw ValidationError("bussgang_report: user index out of range");

  const double p = symbol_energy / static_cast<double>(users);
  const auto col = static_cast<Eigen::Index>(m);
  cdouble a_sum(0.0, 0.0);
  double power = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const cmat& lam = eff.freq[k];
    const cvec w = combiners.w[k].col(col);
    const cvec g = lam.adjoint() * w;  // effective gains seen by w
    a_sum += std::conj(g(col));
    power += p * g.squaredNorm() + w.dot(rd.r_eta * w).real();
  }
  UserLinkReport out;
  out.a = a_sum / static_cast<double>(n);
  power /= static_cast<double>(n);
  double b = power - p * std::norm(out.a);
  if (b < 0.0) {
    if (b < -1e-12 * std::max(1.0, power)) {
      std::ostringstream msg;
      msg << "bussgang_report: negative residual power " << b << " for user " << m;
      throw Error(msg.str());
    }
    b = 0.0;
  }
  out.b_power = b;
  const double signal = p * std::norm(out.a);
  if (signal == 0.0) {
    out.sinr = 0.0;
  } else if (b == 0.0) {
    out.sinr = std::numeric_limits<double>::infinity();
  } else {
    out.sinr = signal / b;
  }
  out.capacity = std::log2(1.0 + out.sinr);
  return out;
}

std::vector<UserLinkReport> bussgang_reports(const EffectiveChannel& eff,
                                             const CombinerBank& combiners,
                                             const ReducedStatistics& rd, double symbol_energy,
                                             std::size_t users) {
  std::vector<UserLinkReport> out;
  out.reserve(users);
  for (std::size_t m = 0; m < users; ++m)
    out.push_back(bussgang_report(eff, combiners, rd, symbol_energy, users, m));
  return out;
}

BlockOutput simulate_block(const Scenario& scn, const ChannelRealization& real,
                           const std::vector<GroupReceiver>& receivers, std::size_t block_length,
                           std::uint64_t seed) {
  const std::size_t n = block_length;
  const auto nn = static_cast<Eigen::Index>(n);
  const auto m_ant = static_cast<Eigen::Index>(scn.antennas);
  if (n < scn.taps) throw DimensionError("simulate_block: block shorter than the channel");
  if (real.taps.size() != scn.groups.size())
    throw DimensionError("simulate_block: realization and scenario differ in group count");

  Rng rng(seed);
  BlockOutput out;
  cmat y = cmat::Zero(m_ant, nn);
  for (std::size_t g = 0; g < scn.groups.size(); ++g) {
    const auto& grp = scn.groups[g];
    const auto k_users = static_cast<Eigen::Index>(grp.user_count());
    const double energy = grp.symbol_energy / static_cast<double>(grp.user_count());
    cmat x(k_users, nn);
    for (Eigen::Index t = 0; t < nn; ++t)
      for (Eigen::Index u = 0; u < k_users; ++u) x(u, t) = qpsk_symbol(rng, energy);

    for (std::size_t l : real.active[g]) {
      const cmat& h = real.taps[g][l];
      for (std::size_t t = 0; t < n; ++t) {
        const auto src = static_cast<Eigen::Index>((t + n - l % n) % n);
        y.col(static_cast<Eigen::Index>(t)).noalias() += h * x.col(src);
      }
    }
    out.tx.push_back(std::move(x));
  }
  y += complex_gaussian_matrix(rng, m_ant, nn, scn.noise_power);

  const cmat f = unitary_dft(n);
  for (const auto& rx : receivers) {
    if (rx.combiners.block_length() != n)
      throw DimensionError("simulate_block: combiners built for a different block length");
    const cmat z = rx.s.adjoint() * y;            // D x N
    const cmat zf = z * f.transpose();            // column k = bin k
    const auto k_users = rx.combiners.w.front().cols();
    cmat xf(k_users, nn);
    for (std::size_t k = 0; k < n; ++k) {
      const auto kk = static_cast<Eigen::Index>(k);
      xf.col(kk) = rx.combiners.w[k].adjoint() * zf.col(kk);
    }
    out.estimates.push_back(xf * f.conjugate());  // inverse DFT
  }
  return out;
}

void summarize_columns(const rmat& samples, rvec& mean, rvec& std_error) {
  const auto trials = samples.rows();
  mean = samples.colwise().mean().transpose();
  std_error = rvec::Zero(samples.cols());
  if (trials < 2) return;
  for (Eigen::Index j = 0; j < samples.cols(); ++j) {
    const double var =
        (samples.col(j).array() - mean(j)).square().sum() / static_cast<double>(trials - 1);
    std_error(j) = std::sqrt(var / static_cast<double>(trials));
  }
}

ErgodicResult ergodic_capacity(const ChannelSampler& sampler, const GroupStatistics& stats,
                               const Scenario& scn, std::size_t g, const cmat& s,
                               CombinerKind kind, std::size_t trials, std::uint64_t seed,
                               std::size_t block_length) {
  if (trials < 1) throw ValidationError("ergodic_capacity: trials must be >= 1");
  if (g >= scn.groups.size()) throw ValidationError("ergodic_capacity: unknown group id");
  const auto& grp = scn.groups[g];
  const std::size_t users = grp.user_count();
  const ReducedStatistics rd = reduce(stats, s);

  ErgodicResult out;
  out.capacity.resize(static_cast<Eigen::Index>(trials), static_cast<Eigen::Index>(users));
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, {t}));
    const std::vector<cmat> taps = sampler.sample_group(g, rng);
    const EffectiveChannel eff = effective_channel(s, taps, block_length);
    const CombinerBank bank = kind == CombinerKind::kZf
                                  ? zf_combiners(eff)
                                  : lmmse_combiners(eff, rd, grp.symbol_energy, users);
    for (std::size_t m = 0; m < users; ++m) {
      out.capacity(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(m)) =
          bussgang_report(eff, bank, rd, grp.symbol_energy, users, m).capacity;
    }
  }
  summarize_columns(out.capacity, out.mean, out.std_error);
  return out;
}

}  // namespace jsdm
