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

#ifndef JSDM_CONSTRAINED_HPP
#define JSDM_CONSTRAINED_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "jsdm/channel.hpp"
#include "jsdm/geb.hpp"
#include "jsdm/numerics.hpp"
#include "jsdm/statistics.hpp"

namespace jsdm {

// Binary antenna-to-RF-chain connection matrix (M x D_g).
using ConnectionMask = Eigen::MatrixXi;

class ConstraintError : public Error {
 public:
  using Error::Error;
};

// Every candidate of the dynamic subarray search left an RF chain unconnected.
class ExhaustionError : public Error {
 public:
  using Error::Error;
};

// Constant-modulus analog stage S_c followed by the digital compensation
// matrix S_cm. Nonzero entries of S_c have modulus exactly 1/sqrt(M).
struct ConstrainedBeamformer {
  cmat s_c;
  cmat s_cm;
  ConnectionMask connection;

  cmat effective() const { return s_c * s_cm; }
};

// Residual history of an alternating-minimization loop.
struct AmTrace {
  std::vector<double> residuals;
  // ||S_cm^H S_cm - I||_F per iteration, for loops with a unitary factor.
  std::vector<double> unitarity;
  std::size_t iterations = 0;
  bool converged = false;
  // Dynamic subarray only: the winning raw candidate's expected SINR and the
  // expected SINR after the fixed-subarray refinement.
  std::optional<double> candidate_score;
  std::optional<double> refined_score;
  std::optional<std::size_t> chosen_restart;
};

struct AmOptions {
  double tol = 1e-8;  // relative residual change
  std::size_t max_iter = 500;
};

inline constexpr std::size_t kDefaultDynamicRestarts = 20;

// Unitary X minimizing ||A X - B||_F; with A^H B = U S V^H this is U V^H.
// Used for both the compensation step and the connection-search rotation.
cmat procrustes_unitary(const cmat& a, const cmat& b);

// Normalized M-point DFT columns closest to the group's cluster directions,
// extended with adjacent columns until D_g are chosen. S_cm = I.
ConstrainedBeamformer dft_beamformer(const Scenario& scn, std::size_t g, std::size_t rf_chains);

// Indices (into the M-point DFT) chosen by dft_beamformer, in selection order.
std::vector<std::size_t> dft_column_indices(const Scenario& scn, std::size_t g,
                                            std::size_t rf_chains);

// Nearest constant-modulus matrix: exp(j arg S_geb) / sqrt(M).
ConstrainedBeamformer phase_extraction(const UnconstrainedBeamformer& geb);
ConstrainedBeamformer phase_extraction(const cmat& s_geb);

// Alternates the unitary Procrustes compensation and phase extraction of
// S_geb S_cm^H, starting from phase_extraction. residuals[0] is the starting
// residual ||S_geb - S_c0||_F; entry n >= 1 is ||S_geb S_cm,n^H - S_c,n+1||_F.
std::pair<ConstrainedBeamformer, AmTrace> pe_am(const cmat& s_geb, const AmOptions& opts = {});

// Antenna i drives RF chain i / (M / D) (ordered) or i mod D (interlaced).
ConnectionMask ordered_mask(std::size_t antennas, std::size_t rf_chains);
ConnectionMask interlaced_mask(std::size_t antennas, std::size_t rf_chains);

// Exactly one connection per antenna and at least one antenna per chain.
void check_partial_connection(const ConnectionMask& mask);

// Partially connected design on a fixed mask: alternates least-squares
// compensation and decoupled per-antenna phases. Without initial phases the
// start is uniformly random from `seed`. residuals[n] = ||S_geb - S_c,n+1 S_cm,n||_F.
std::pair<ConstrainedBeamformer, AmTrace> fixed_subarray(
    const cmat& s_geb, const ConnectionMask& mask,
    const std::optional<rvec>& initial_phases = std::nullopt, std::uint64_t seed = 0,
    const AmOptions& opts = {});

// One run of the connection search: unit-modulus (no 1/sqrt(M)) single-entry
// rows, alternating with a unitary rotation of S_geb. The result may leave an
// RF chain without antennas. residuals[n] = ||S_geb A_n - S~_c,n+1||_F.
std::pair<cmat, AmTrace> dynamic_connection(const cmat& s_geb, std::uint64_t seed,
                                            const AmOptions& opts = {});

// True when every column of `candidate` has at least one nonzero entry.
bool every_chain_connected(const cmat& candidate);

// Runs dynamic_connection `restarts` times (seeds seed + t), scores valid
// candidates with expected_sinr, and refines the best one with fixed_subarray
// using its support and phases.
std::pair<ConstrainedBeamformer, AmTrace> dynamic_subarray(
    const cmat& s_geb, const GroupStatistics& stats,
    std::size_t restarts = kDefaultDynamicRestarts, std::uint64_t seed = 0,
    const AmOptions& opts = {});

}  // namespace jsdm

#endif  // JSDM_CONSTRAINED_HPP
