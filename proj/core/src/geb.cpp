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

#include "jsdm/geb.hpp"

#include <cmath>
#include <sstream>

namespace jsdm {

UnconstrainedBeamformer compute_geb(const GroupStatistics& stats, std::size_t rf_chains) {
  const auto m = stats.r_s.rows();
  const auto d = static_cast<Eigen::Index>(rf_chains);
  if (d < 1 || d > m) {
    std::ostringstream msg;
    msg << "compute_geb: rf_chains = " << rf_chains << " must be in [1, " << m << "]";
    throw DimensionError(msg.str());
  }
  const EigDecomposition eig = generalized_hermitian_eig(stats.r_s, stats.r_eta);

  cmat dominant = eig.vectors.leftCols(d);
  // Largest-magnitude entry real positive, so the output is reproducible.
  for (Eigen::Index j = 0; j < d; ++j) {
    Eigen::Index imax = 0;
    dominant.col(j).cwiseAbs().maxCoeff(&imax);
    const cdouble pivot = dominant(imax, j);
    if (std::abs(pivot) > 0.0) dominant.col(j) *= std::conj(pivot) / std::abs(pivot);
  }
  return {qr(dominant).q, eig.values.head(d)};
}

double reduced_mutual_info(const GroupStatistics& stats, const cmat& s) {
  const ReducedStatistics rd = reduce(stats, s);
  const double nats = log_det_hpd(rd.r_eta + rd.r_s) - log_det_hpd(rd.r_eta);
  return nats / std::log(2.0);
}

}  // namespace jsdm
