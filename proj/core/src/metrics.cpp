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


#include "jsdm/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "jsdm/channel.hpp"

namespace jsdm {

rvec beampattern(const cmat& s, const std::vector<double>& theta_deg) {
  const cmat q = qr(s).q;
  const auto m = static_cast<std::size_t>(s.rows());
  rvec out(static_cast<Eigen::Index>(theta_deg.size()));
  for (std::size_t i = 0; i < theta_deg.size(); ++i) {
    const double p = (q.adjoint() * steering(theta_deg[i], m)).squaredNorm();
    out(static_cast<Eigen::Index>(i)) = std::clamp(p, 0.0, 1.0);
  }
  return out;
}

std::vector<double> arange_inclusive(double start, double stop, double step) {
  if (!(step > 0.0)) throw ValidationError("grid step must be positive");
  if (stop < start) throw ValidationError("grid stop must not precede start");
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 0.5)) + 1;
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = start + static_cast<double>(i) * step;
  return out;
}

std::vector<double> theta_grid(double step) { return arange_inclusive(-90.0, 90.0, step); }

rvec cdf(const std::vector<double>& values, const std::vector<double>& grid) {
  if (values.empty()) throw ValidationError("cdf: no values");
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  rvec out(static_cast<Eigen::Index>(grid.size()));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto below = std::lower_bound(sorted.begin(), sorted.end(), grid[i]) - sorted.begin();
    out(static_cast<Eigen::Index>(i)) =
        static_cast<double>(below) / static_cast<double>(sorted.size());
  }
  return out;
}

}  // namespace jsdm
