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


#ifndef JSDM_METRICS_HPP
#define JSDM_METRICS_HPP

#include <vector>

#include "jsdm/numerics.hpp"

namespace jsdm {

inline constexpr double kDefaultThetaStep = 0.05;

// Squared norm of the projection of u(theta) onto the column span of s.
rvec beampattern(const cmat& s, const std::vector<double>& theta_deg);

// start, start + step, ... up to stop (inclusive within half a step).
std::vector<double> arange_inclusive(double start, double stop, double step);

// -90 .. 90 degrees.
std::vector<double> theta_grid(double step = kDefaultThetaStep);

// Empirical P(value < c) for each c in grid.
rvec cdf(const std::vector<double>& values, const std::vector<double>& grid);

}  // namespace jsdm

#endif  // JSDM_METRICS_HPP
