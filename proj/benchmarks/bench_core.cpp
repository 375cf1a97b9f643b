// Copyright 2026 The dirtomo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "dirtomo/analysis.hpp"
#include "dirtomo/measurement.hpp"
#include "dirtomo/reconstruction.hpp"
#include "dirtomo/rng.hpp"
#include "dirtomo/state.hpp"

namespace {

using dirtomo::CouplingAngle;

void BM_HaarState(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  std::uint64_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dirtomo::haar_random_state(d, ++i));
  }
}
BENCHMARK(BM_HaarState)->Arg(10)->Arg(100)->Arg(1000);

void BM_ClosedFormProbabilities(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto psi = dirtomo::haar_random_state(d, 7);
  const CouplingAngle theta(0.2);
  for (auto _ : state) {
    for (int x = 0; x < d; ++x) {
      benchmark::DoNotOptimize(
          dirtomo::exact_pointer_probabilities(psi, x, theta, 0));
    }
  }
}
BENCHMARK(BM_ClosedFormProbabilities)->Arg(10)->Arg(100);

void BM_OracleProbabilities(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto psi = dirtomo::haar_random_state(d, 7);
  const CouplingAngle theta(0.2);
  for (auto _ : state) {
    for (int x = 0; x < d; ++x) {
      benchmark::DoNotOptimize(
          dirtomo::exact_pointer_probabilities_oracle(psi, x, theta, 0));
    }
  }
}
BENCHMARK(BM_OracleProbabilities)->Arg(10)->Arg(100);

void BM_StrongPipeline(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto psi = dirtomo::haar_random_state(d, 11);
  const CouplingAngle strong = CouplingAngle::strong();
  std::vector<dirtomo::PointerProbabilities> table(d);
  for (int x = 0; x < d; ++x) {
    table[x] = dirtomo::exact_pointer_probabilities(psi, x, strong, 0);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(dirtomo::dst_estimate(table));
  }
}
BENCHMARK(BM_StrongPipeline)->Arg(10)->Arg(100)->Arg(1000);

void BM_WeakClosedForm(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto psi = dirtomo::haar_random_state(d, 13);
  const CouplingAngle theta(0.2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dirtomo::dwt_closed_form(psi, theta));
  }
}
BENCHMARK(BM_WeakClosedForm)->Arg(10)->Arg(100)->Arg(1000);

void BM_MixedTraceDistance(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto a = dirtomo::random_density_matrix(d, 2, 17);
  const auto b = dirtomo::random_density_matrix(d, d, 19);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dirtomo::trace_distance_mixed(a, b));
  }
}
BENCHMARK(BM_MixedTraceDistance)->Arg(8)->Arg(32)->Arg(128);

void BM_MixedPipeline(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto rho = dirtomo::random_density_matrix(d, 2, 23);
  const CouplingAngle theta(0.3);
  for (auto _ : state) {
    const auto tomogram = dirtomo::exact_tomogram(rho, theta);
    benchmark::DoNotOptimize(dirtomo::mixed_dst_estimate(tomogram, theta));
  }
}
BENCHMARK(BM_MixedPipeline)->Arg(4)->Arg(8)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
