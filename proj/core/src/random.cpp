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

#include "jsdm/random.hpp"

#include <cmath>

namespace jsdm {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> stream) {
  std::uint64_t h = splitmix64(base);
  for (std::uint64_t s : stream) h = splitmix64(h ^ splitmix64(s + 0x632be59bd9b4e019ULL));
  return h;
}

cdouble complex_gaussian(Rng& rng, double variance) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5 * variance));
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

cvec complex_gaussian_vector(Rng& rng, Eigen::Index n, double variance) {
  cvec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = complex_gaussian(rng, variance);
  return v;
}

cmat complex_gaussian_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols, double variance) {
  cmat m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = complex_gaussian(rng, variance);
  return m;
}

double uniform_phase(Rng& rng) {
  std::uniform_real_distribution<double> u(-kPi, kPi);
  return u(rng);
}

cdouble qpsk_symbol(Rng& rng, double energy) {
  const double a = std::sqrt(0.5 * energy);
  const std::uint64_t bits = rng();
  return {(bits & 1U) ? a : -a, (bits & 2U) ? a : -a};
}

}  // namespace jsdm
