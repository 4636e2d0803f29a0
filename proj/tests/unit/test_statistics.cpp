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


#include "jsdm/statistics.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace jsdm {
namespace {

Scenario symmetric_pair() {
  Scenario scn;
  scn.antennas = 8;
  scn.taps = 2;
  scn.noise_power = 0.5;
  for (double mu : {-20.0, 25.0}) {
    GroupProfile g;
    g.rf_chains = 2;
    g.symbol_energy = 4.0;
    g.users = {UserProfile{1.0, {{0, mu, 2.0}}}, UserProfile{1.0, {{1, mu + 3.0, 2.0}}}};
    scn.groups.push_back(g);
  }
  return scn;
}

TEST(GroupStatistics, SingleGroupHasNoiseOnlyInterference) {
  Scenario scn = symmetric_pair();
  scn.groups.pop_back();
  const auto stats = group_statistics(build_covariances(scn), scn, 0);
  EXPECT_EQ((stats.r_eta - 0.5 * cmat::Identity(8, 8)).norm(), 0.0);
}

TEST(GroupStatistics, SymmetricGroupsSwapRoles) {
  const Scenario scn = symmetric_pair();
  const auto cov = build_covariances(scn);
  const auto s0 = group_statistics(cov, scn, 0);
  const auto s1 = group_statistics(cov, scn, 1);
  EXPECT_LE((s0.r_s - (s1.r_eta - 0.5 * cmat::Identity(8, 8))).norm(), 1e-12);
}

TEST(GroupStatistics, TraceLinearity) {
  Scenario scn = symmetric_pair();
  scn.groups[0].users[1].gain = 3.0;
  const auto stats = group_statistics(build_covariances(scn), scn, 0);
  EXPECT_NEAR(stats.r_s.trace().real(), 4.0 * (1.0 + 3.0) / 2.0, 1e-9);
  EXPECT_GE(hermitian_eig(stats.r_eta).values.minCoeff(), 0.5 * (1.0 - 1e-10));
  EXPECT_THROW(group_statistics(build_covariances(scn), scn, 2), ValidationError);
}

TEST(Reduce, PrincipalSubmatrixAndCongruence) {
  Rng rng(31);
  GroupStatistics stats{testing::random_hpd(rng, 6, 2, 0.0), testing::random_hpd(rng, 6, 6, 1.0)};
  const cmat s = cmat::Identity(6, 3);
  const auto rd = reduce(stats, s);
  EXPECT_LE((rd.r_s - stats.r_s.topLeftCorner(3, 3)).norm(), 1e-14);

  const cmat base = testing::random_orthonormal(rng, 6, 3);
  const cmat t = testing::random_unitary(rng, 3);
  const auto a = reduce(stats, base * t);
  const auto b = reduce(stats, base);
  EXPECT_LE((a.r_s - t.adjoint() * b.r_s * t).norm(), 1e-12);
  EXPECT_LE((a.r_eta - t.adjoint() * b.r_eta * t).norm(), 1e-12);

  cmat deficient = cmat::Zero(6, 2);
  deficient(0, 0) = deficient(0, 1) = 1.0;
  EXPECT_THROW(reduce(stats, deficient), RankError);
}

TEST(ExpectedSinr, NoiseOnlyAndHomogeneity) {
  Rng rng(32);
  GroupStatistics stats{testing::random_hpd(rng, 5, 2, 0.0), 2.0 * cmat::Identity(5, 5)};
  const cmat s = testing::random_orthonormal(rng, 5, 2);
  const double v = expected_sinr(stats, s);
  EXPECT_NEAR(v, (s.adjoint() * stats.r_s * s).trace().real() / (2.0 * 2.0), 1e-12);
  EXPECT_NEAR(expected_sinr(stats, cdouble(0.3, -2.0) * s), v, 1e-12 * v);
  EXPECT_NEAR(expected_sinr(stats, s * testing::random_unitary(rng, 2)), v, 1e-12 * v);
}

TEST(ExpectedSinr, InvertibleFactorInvarianceOnlyForSingleColumn) {
  Rng rng(33);
  GroupStatistics stats{testing::random_hpd(rng, 5, 2, 0.0), testing::random_hpd(rng, 5, 5, 1.0)};
  const cmat s1 = testing::random_orthonormal(rng, 5, 1);
  EXPECT_NEAR(expected_sinr(stats, s1 * cdouble(7.0, 1.0)), expected_sinr(stats, s1), 1e-12);
}

TEST(ExpectedSinr, HandComputedRankOneToy) {
  // Rank-1 covariances at 0 and 90 degrees, M = 4, D = 1.
  const cvec u0 = steering(0.0, 4);
  const cvec u90 = steering(90.0, 4);
  GroupStatistics stats{3.0 * u0 * u0.adjoint(), 2.0 * u90 * u90.adjoint() + cmat::Identity(4, 4)};
  // s = u0: signal 3, interference 2 |u90^H u0|^2 + 1 = 1 (orthogonal: sum of (-1)^m is 0).
  EXPECT_NEAR(expected_sinr(stats, u0), 3.0, 1e-12);
  cvec s(4);
  s << 1.0, 0.0, 0.0, 0.0;
  // s = e0: signal 3/4, interference 2/4 + 1.
  EXPECT_NEAR(expected_sinr(stats, s), 0.75 / 1.5, 1e-12);
}

}  // namespace
}  // namespace jsdm
