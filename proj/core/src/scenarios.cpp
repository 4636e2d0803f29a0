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

#include "jsdm/scenarios.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace jsdm {

namespace {

struct Cluster {
  std::size_t delay;
  double aoa_user1;
  double aoa_user2;
};

GroupProfile two_user_group(const std::vector<Cluster>& clusters, std::size_t rf_chains,
                            double energy_db, bool mobile) {
  GroupProfile grp;
  grp.rf_chains = rf_chains;
  grp.symbol_energy = db_to_linear(energy_db);
  grp.mobile = mobile;
  grp.users.resize(2);
  for (const auto& c : clusters) {
    grp.users[0].mpcs.push_back({c.delay, c.aoa_user1, 2.0});
    grp.users[1].mpcs.push_back({c.delay, c.aoa_user2, 2.0});
  }
  return grp;
}

const std::vector<Cluster> kGroup1 = {{0, -15.5, -14.5}, {5, -2.5, -1.5}, {11, 16.5, 17.5}};
const std::vector<Cluster> kGroup2 = {{3, 40.5, 41.5}, {9, 20.5, 21.5}};
const std::vector<Cluster> kGroup3 = {{8, -10.5, -9.5}, {17, -20.5, -19.5}};
const std::vector<Cluster> kGroup4 = {{29, -40.5, -39.5}};

}  // namespace

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

Scenario table1_scenario(std::size_t antennas, std::size_t rf_chains, double symbol_energy_db) {
  Scenario scn;
  scn.antennas = antennas;
  scn.taps = 32;
  scn.noise_power = 1.0;
  scn.groups.push_back(two_user_group(kGroup1, rf_chains, symbol_energy_db, true));
  scn.groups.push_back(two_user_group(kGroup2, rf_chains, symbol_energy_db, false));
  scn.groups.push_back(two_user_group(kGroup3, rf_chains, symbol_energy_db, false));
  scn.groups.push_back(two_user_group(kGroup4, rf_chains, symbol_energy_db, false));
  return scn;
}

Scenario merged_scenario(std::size_t antennas, std::size_t rf_chains, double own_energy_db,
                         double interferer_energy_db) {
  // Relative layout taken from the mobile group at phi = 15 degrees next to
  // the second group; the cluster centroid sits at 21.4 degrees.
  constexpr double kMobileAt = 15.0;
  constexpr double kCentroid = 21.4;

  GroupProfile merged;
  merged.rf_chains = rf_chains;
  merged.mobile = true;
  merged.symbol_energy = 2.0 * db_to_linear(own_energy_db);
  merged.users.resize(4);
  for (const auto& c : kGroup1) {
    merged.users[0].mpcs.push_back({c.delay, c.aoa_user1 + kMobileAt - kCentroid, 2.0});
    merged.users[1].mpcs.push_back({c.delay, c.aoa_user2 + kMobileAt - kCentroid, 2.0});
  }
  for (const auto& c : kGroup2) {
    merged.users[2].mpcs.push_back({c.delay, c.aoa_user1 - kCentroid, 2.0});
    merged.users[3].mpcs.push_back({c.delay, c.aoa_user2 - kCentroid, 2.0});
  }

  Scenario scn;
  scn.antennas = antennas;
  scn.taps = 32;
  scn.noise_power = 1.0;
  scn.groups.push_back(std::move(merged));
  scn.groups.push_back(two_user_group(kGroup3, 4, interferer_energy_db, false));
  scn.groups.push_back(two_user_group(kGroup4, 4, interferer_energy_db, false));
  return scn;
}

}  // namespace jsdm
