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

#include <sstream>

namespace jsdm {

namespace {

void check_beamformer(const GroupStatistics& stats, const cmat& s, const char* who) {
  if (s.rows() != stats.r_s.rows() || s.cols() == 0 || s.cols() > s.rows()) {
    std::ostringstream msg;
    msg << who << ": beamformer is " << s.rows() << "x" << s.cols() << " for a "
        << stats.r_s.rows() << "-antenna array";
    throw DimensionError(msg.str());
  }
}

}  // namespace

GroupStatistics group_statistics(const CovarianceSet& cov, const Scenario& scn, std::size_t g) {
  if (g >= scn.groups.size() || g >= cov.group_count()) {
    std::ostringstream msg;
    msg << "group_statistics: unknown group id " << g;
    throw ValidationError(msg.str());
  }
  const auto m = static_cast<Eigen::Index>(scn.antennas);
  GroupStatistics out{cmat::Zero(m, m), scn.noise_power * cmat::Identity(m, m)};
  for (std::size_t h = 0; h < scn.groups.size(); ++h) {
    const auto& grp = scn.groups[h];
    const double weight = grp.symbol_energy / static_cast<double>(grp.user_count());
    if (h == g) {
      out.r_s += weight * cov.group_sum(h);
    } else {
      out.r_eta += weight * cov.group_sum(h);
    }
  }
  out.r_s = hermitian_part(out.r_s);
  out.r_eta = hermitian_part(out.r_eta);
  return out;
}

ReducedStatistics reduce(const GroupStatistics& stats, const cmat& s) {
  check_beamformer(stats, s, "reduce");
  qr(s);  // rank check only
  return {hermitian_part(s.adjoint() * stats.r_s * s),
          hermitian_part(s.adjoint() * stats.r_eta * s)};
}

double expected_sinr(const GroupStatistics& stats, const cmat& s) {
  check_beamformer(stats, s, "expected_sinr");
  const double signal = (s.adjoint() * stats.r_s * s).trace().real();
  const double interference = (s.adjoint() * stats.r_eta * s).trace().real();
  if (!(interference > 0.0)) throw Error("expected_sinr: zero interference-plus-noise power");
  return signal / interference;
}

}  // namespace jsdm
