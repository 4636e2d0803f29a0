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


#ifndef JSDM_DIGITAL_HPP
#define JSDM_DIGITAL_HPP

#include <cstddef>
#include <vector>

#include "jsdm/channel.hpp"
#include "jsdm/numerics.hpp"
#include "jsdm/statistics.hpp"

namespace jsdm {

// Channel seen after the analog stage S (including any compensation).
struct EffectiveChannel {
  std::vector<cmat> taps;  // L entries, D x K
  std::vector<cmat> freq;  // N entries, freq[k] = sum_l taps[l] exp(-j 2 pi k l / N)

  std::size_t block_length() const { return freq.size(); }
};

// Per-bin combiners; column m of W[k] serves user m.
struct CombinerBank {
  std::vector<cmat> w;

  std::size_t block_length() const { return w.size(); }
};

EffectiveChannel effective_channel(const cmat& s, const ChannelRealization& real,
                                   std::size_t g_src, std::size_t block_length);
// Same, from one group's raw taps (taps[l] is M x K).
EffectiveChannel effective_channel(const cmat& s, const std::vector<cmat>& taps,
                                   std::size_t block_length);

// W_k = L (L^H L)^-1. Throws RankError naming the bin when L^H L is singular.
CombinerBank zf_combiners(const EffectiveChannel& eff);

// W_k = ((E_s/K) L L^H + R_eta)^-1 (E_s/K) L with the reduced statistical
// interference-plus-noise covariance.
CombinerBank lmmse_combiners(const EffectiveChannel& eff, const ReducedStatistics& rd,
                             double symbol_energy, std::size_t users);

enum class CombinerKind { kZf, kLmmse };

const char* to_string(CombinerKind kind);

}  // namespace jsdm

#endif  // JSDM_DIGITAL_HPP
