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

#include <benchmark/benchmark.h>

#include "jsdm/channel.hpp"
#include "jsdm/constrained.hpp"
#include "jsdm/geb.hpp"
#include "jsdm/scenarios.hpp"
#include "jsdm/statistics.hpp"

namespace {

using namespace jsdm;

struct Fixture {
  Scenario scn;
  CovarianceSet cov;
  GroupStatistics stats;
  UnconstrainedBeamformer geb;

  explicit Fixture(std::size_t antennas)
      : scn(table1_scenario(antennas)),
        cov(build_covariances(scn)),
        stats(group_statistics(cov, scn, 0)),
        geb(compute_geb(stats, 4)) {}
};

void BM_CcmOneRing(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ccm_one_ring(10.0, 2.0, 1.0, m));
}
BENCHMARK(BM_CcmOneRing)->Arg(32)->Arg(128)->Unit(benchmark::kMicrosecond);

void BM_GeneralizedEig(benchmark::State& state) {
  Fixture f(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(compute_geb(f.stats, 4));
}
BENCHMARK(BM_GeneralizedEig)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_PeAm(benchmark::State& state) {
  Fixture f(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pe_am(f.geb.s));
}
BENCHMARK(BM_PeAm)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_DynamicSubarray(benchmark::State& state) {
  Fixture f(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dynamic_subarray(f.geb.s, f.stats, 4, 1));
}
BENCHMARK(BM_DynamicSubarray)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_SampleChannels(benchmark::State& state) {
  Fixture f(static_cast<std::size_t>(state.range(0)));
  const ChannelSampler sampler(f.cov);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sampler.sample(++seed));
}
BENCHMARK(BM_SampleChannels)->Arg(32)->Arg(128)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
