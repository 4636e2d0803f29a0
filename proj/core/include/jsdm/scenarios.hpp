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

#ifndef JSDM_SCENARIOS_HPP
#define JSDM_SCENARIOS_HPP

#include <cstddef>

#include "jsdm/channel.hpp"

namespace jsdm {

double db_to_linear(double db);
double linear_to_db(double linear);

// The canonical four-group angle-delay profile: L = 32 taps, 2 users per
// group, 2 degree spreads, unit gains, N0 = 1, group 0 mobile.
Scenario table1_scenario(std::size_t antennas = 128, std::size_t rf_chains = 4,
                         double symbol_energy_db = 40.0);

// Groups 0 and 1 of table1_scenario merged into one mobile group of four
// users and five clusters, centred on phi. The remaining two groups act as
// interference. Per-user energy of the merged group equals that of a
// two-user group at `own_energy_db`.
Scenario merged_scenario(std::size_t antennas = 128, std::size_t rf_chains = 8,
                         double own_energy_db = 30.0, double interferer_energy_db = 20.0);

}  // namespace jsdm

#endif  // JSDM_SCENARIOS_HPP
