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

#ifndef JSDM_GEB_HPP
#define JSDM_GEB_HPP

#include <cstddef>

#include "jsdm/numerics.hpp"
#include "jsdm/statistics.hpp"

namespace jsdm {

/// Generalized eigenbeamformer of one group.
///
/// `s` spans the D_g dominant generalized eigenvectors of the pencil
/// (R_s, R_eta) and has orthonormal columns. Orthonormalizing is free: the
/// reduced-dimension mutual information is invariant to any invertible
/// right factor, so only the column span matters.
struct UnconstrainedBeamformer {
  cmat s;
  rvec gen_eigenvalues;  // D_g largest, non-increasing
};

UnconstrainedBeamformer compute_geb(const GroupStatistics& stats, std::size_t rf_chains);

// log2 det(I + (S^H R_eta S)^-1 S^H R_s S), in bits.
double reduced_mutual_info(const GroupStatistics& stats, const cmat& s);

}  // namespace jsdm

#endif  // JSDM_GEB_HPP
