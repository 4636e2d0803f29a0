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

#include <gtest/gtest.h>

#include "jsdm/constrained.hpp"
#include "jsdm/geb.hpp"
#include "jsdm/scenarios.hpp"
#include "oracles.hpp"

namespace jsdm {
namespace {

// Single group, no interferers: the simplest setting with exact answers.
Scenario lone_group(std::size_t m, double energy, double noise) {
  Scenario scn;
  scn.antennas = m;
  scn.taps = 3;
  scn.noise_power = noise;
  GroupProfile g;
  g.rf_chains = 4;
  g.symbol_energy = energy;
  g.users = {UserProfile{1.0, {{0, -30.0, 6.0}, {2, 10.0, 6.0}}},
             UserProfile{1.0, {{1, 35.0, 6.0}}}};
  scn.groups = {g};
  return scn;
}

TEST(SimulateBlock, NoiselessZfRecoversSymbols) {
  Scenario scn = lone_group(8, 2.0, 1e-300);
  const auto cov = build_covariances(scn);
  const auto real = sample_channels(cov, 5);
  const cmat s = cmat::Identity(8, 8);
  const auto eff = effective_channel(s, real, 0, 16);
  const auto out = simulate_block(scn, real, {GroupReceiver{0, s, zf_combiners(eff)}}, 16, 9);
  EXPECT_LE((out.estimates[0] - out.tx[0]).norm(), 1e-9 * out.tx[0].norm());
}

TEST(Bussgang, ZfClosedForm) {
  Rng rng(71);
  const auto taps = std::vector<cmat>{testing::random_cmat(rng, 4, 2), testing::random_cmat(rng, 4, 2)};
  const auto eff = effective_channel(cmat::Identity(4, 4), taps, 8);
  const auto bank = zf_combiners(eff);
  const cmat r_eta = testing::random_hpd(rng, 4, 4, 0.3);
  ReducedStatistics rd{cmat::Identity(4, 4), r_eta};
  const double e = 3.0;
  for (std::size_t m = 0; m < 2; ++m) {
    const auto rep = bussgang_report(eff, bank, rd, e, 2, m);
    EXPECT_NEAR(std::abs(rep.a - 1.0), 0.0, 1e-10);
    double noise = 0.0;
    for (std::size_t k = 0; k < 8; ++k) {
      const cvec w = bank.w[k].col(static_cast<Eigen::Index>(m));
      noise += w.dot(r_eta * w).real();
    }
    noise /= 8.0;
    EXPECT_NEAR(rep.b_power, noise, 1e-9 * noise);
    EXPECT_NEAR(rep.sinr, (e / 2.0) / noise, 1e-8 * rep.sinr);
    EXPECT_NEAR(rep.capacity, std::log2(1.0 + rep.sinr), 1e-12);
  }
}

TEST(Bussgang, ZeroCombinerGivesZeroCapacity) {
  Rng rng(72);
  const auto eff = effective_channel(cmat::Identity(3, 3), {testing::random_cmat(rng, 3, 1)}, 4);
  CombinerBank zero{std::vector<cmat>(4, cmat::Zero(3, 1))};
  const auto rep = bussgang_report(eff, zero, {cmat::Identity(3, 3), cmat::Identity(3, 3)}, 1.0, 1, 0);
  EXPECT_EQ(rep.sinr, 0.0);
  EXPECT_EQ(rep.capacity, 0.0);
}

TEST(Bussgang, LmmseNotWorseThanZf) {
  Rng rng(73);
  for (int inst = 0; inst < 20; ++inst) {
    const auto scn = testing::random_scenario(rng, 12, 2, 4, 3);
    const auto cov = build_covariances(scn);
    const auto stats = group_statistics(cov, scn, 0);
    const cmat s = compute_geb(stats, 3).s;
    const auto rd = reduce(stats, s);
    const auto real = sample_channels(cov, static_cast<std::uint64_t>(inst));
    const auto eff = effective_channel(s, real, 0, 16);
    const double e = scn.groups[0].symbol_energy;
    const auto zf = bussgang_reports(eff, zf_combiners(eff), rd, e, 2);
    const auto lm = bussgang_reports(eff, lmmse_combiners(eff, rd, e, 2), rd, e, 2);
    for (std::size_t m = 0; m < 2; ++m) ASSERT_GE(lm[m].sinr, zf[m].sinr * (1.0 - 1e-9));
  }
}

TEST(Ergodic, DeterministicAndMonotoneInEnergy) {
  double prev = 0.0;
  for (double e : {1.0, 10.0, 100.0}) {
    const Scenario scn = lone_group(8, e, 1.0);
    const auto cov = build_covariances(scn);
    const auto stats = group_statistics(cov, scn, 0);
    const ChannelSampler sampler(cov);
    const cmat s = compute_geb(stats, 4).s;
    const auto a = ergodic_capacity(sampler, stats, scn, 0, s, CombinerKind::kLmmse, 20, 3, 16);
    const auto b = ergodic_capacity(sampler, stats, scn, 0, s, CombinerKind::kLmmse, 20, 3, 16);
    EXPECT_EQ((a.capacity - b.capacity).norm(), 0.0);
    EXPECT_GT(a.mean.sum(), prev);
    prev = a.mean.sum();
    EXPECT_EQ(a.capacity.rows(), 20);
    EXPECT_TRUE((a.std_error.array() > 0.0).all());
  }
}

TEST(Ergodic, SummaryMatchesDirectFormula) {
  rmat x(4, 1);
  x << 1.0, 2.0, 3.0, 6.0;
  rvec mean, se;
  summarize_columns(x, mean, se);
  EXPECT_DOUBLE_EQ(mean(0), 3.0);
  EXPECT_NEAR(se(0), std::sqrt((4.0 + 1.0 + 0.0 + 9.0) / 3.0 / 4.0), 1e-15);
}

}  // namespace
}  // namespace jsdm
