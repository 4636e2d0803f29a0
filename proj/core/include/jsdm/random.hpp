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

#ifndef JSDM_RANDOM_HPP
#define JSDM_RANDOM_HPP

#include <cstdint>
#include <initializer_list>
#include <random>

#include "jsdm/numerics.hpp"

namespace jsdm {

using Rng = std::mt19937_64;

// Mixes a base seed with stream identifiers (splitmix64 finalizer per step).
// Used to give every Monte Carlo trial, sweep point and restart its own stream.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> stream);

// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
cdouble complex_gaussian(Rng& rng, double variance = 1.0);

// Vector / matrix of i.i.d. CN(0, variance) entries.
cvec complex_gaussian_vector(Rng& rng, Eigen::Index n, double variance = 1.0);
cmat complex_gaussian_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols,
                             double variance = 1.0);

// Uniform phase in [-pi, pi).
double uniform_phase(Rng& rng);

// Unit-energy QPSK symbol scaled by sqrt(energy).
cdouble qpsk_symbol(Rng& rng, double energy = 1.0);

}  // namespace jsdm

#endif  // JSDM_RANDOM_HPP
