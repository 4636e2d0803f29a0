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

#ifndef JSDM_STATISTICS_HPP
#define JSDM_STATISTICS_HPP

#include <cstddef>

#include "jsdm/channel.hpp"
#include "jsdm/numerics.hpp"

namespace jsdm {

// Second-order statistics of one group at the full array.
//   r_s   = (E_s/K) sum_m sum_l R_l^(m)                   intended signal
//   r_eta = sum_{g' != g} (E_s'/K') sum_m sum_l R_l + N0 I  interference + noise
struct GroupStatistics {
  cmat r_s;
  cmat r_eta;
};

// The same statistics seen after an analog beamformer S (D_g x D_g). These do
// not depend on the frequency bin.
struct ReducedStatistics {
  cmat r_s;
  cmat r_eta;
};

GroupStatistics group_statistics(const CovarianceSet& cov, const Scenario& scn, std::size_t g);

// S^H R S for both matrices. Throws RankError when S is column rank deficient.
ReducedStatistics reduce(const GroupStatistics& stats, const cmat& s);

// tr(S^H R_s S) / tr(S^H R_eta S), the ranking score of dynamic subarrays.
double expected_sinr(const GroupStatistics& stats, const cmat& s);

}  // namespace jsdm

#endif  // JSDM_STATISTICS_HPP
