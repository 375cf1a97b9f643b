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

#include <array>
#include <cmath>

#include "doctest.h"

#include "dirtomo/measurement.hpp"
#include "dirtomo/rng.hpp"
#include "dirtomo/sampling.hpp"
#include "dirtomo/state.hpp"

using namespace dirtomo;

namespace {

constexpr std::array<PointerBasis, 3> kAllBases = {
    PointerBasis::kZ, PointerBasis::kX, PointerBasis::kY};

PointerProbabilities example_probs() {
  const StateVector psi = haar_random_state(4, 91);
  return exact_pointer_probabilities(psi, 1, CouplingAngle(0.3), 0);
}

}  // namespace

TEST_CASE("counts are deterministic in the seed") {
  const PointerProbabilities p = example_probs();
  for (SamplingScheme scheme : {SamplingScheme::kMultinomialWithDiscard,
                                SamplingScheme::kPoisson}) {
    const ShotCounts a = sample_counts(p, kAllBases, 5000, scheme, 7);
    const ShotCounts b = sample_counts(p, kAllBases, 5000, scheme, 7);
    const ShotCounts c = sample_counts(p, kAllBases, 5000, scheme, 8);
    REQUIRE(a.counts.size() == 3);
    bool all_equal = true;
    bool any_diff_c = false;
    for (std::size_t i = 0; i < 3; ++i) {
      all_equal = all_equal && a.counts[i].first == b.counts[i].first &&
                  a.counts[i].second == b.counts[i].second &&
                  a.counts[i].discard == b.counts[i].discard;
      any_diff_c = any_diff_c || a.counts[i].first != c.counts[i].first ||
                   a.counts[i].second != c.counts[i].second;
    }
    CHECK(all_equal);
    CHECK(any_diff_c);
  }
}

TEST_CASE("fixed-budget counts sum to the trial count") {
  const PointerProbabilities p = example_probs();
  const ShotCounts sc = sample_counts(
      p, kAllBases, 20000, SamplingScheme::kMultinomialWithDiscard, 3);
  for (const BasisCounts& bc : sc.counts) {
    CHECK(bc.first >= 0);
    CHECK(bc.second >= 0);
    CHECK(bc.discard >= 0);
    CHECK(bc.first + bc.second + bc.discard == 20000);
  }
  CHECK(sc.site == p.site);
  CHECK(sc.momentum == p.momentum);
  CHECK(sc.theta == p.theta);
}

TEST_CASE("independent-count model has no discard bucket") {
  const PointerProbabilities p = example_probs();
  const ShotCounts sc =
      sample_counts(p, kAllBases, 20000, SamplingScheme::kPoisson, 3);
  for (const BasisCounts& bc : sc.counts) {
    CHECK(bc.discard == 0);
  }
}

TEST_CASE("estimated probabilities converge to the inputs") {
  const PointerProbabilities p = example_probs();
  const long long n = 400000;
  for (SamplingScheme scheme : {SamplingScheme::kMultinomialWithDiscard,
                                SamplingScheme::kPoisson}) {
    const PointerProbabilities est =
        sample_counts(p, kAllBases, n, scheme, 12345).estimated();
    for (PointerOutcome j :
         {PointerOutcome::kZero, PointerOutcome::kOne, PointerOutcome::kPlus,
          PointerOutcome::kMinus, PointerOutcome::kLeft,
          PointerOutcome::kRight}) {
      const double tol =
          6.0 * std::sqrt(std::max(p[j], 1e-6) / double(n)) + 1e-9;
      CHECK(std::abs(est[j] - p[j]) <= tol);
    }
  }
}

TEST_CASE("sampling a subset of bases leaves the others at zero") {
  const PointerProbabilities p = example_probs();
  const std::array<PointerBasis, 2> transverse = {PointerBasis::kX,
                                                  PointerBasis::kY};
  const ShotCounts sc = sample_counts(p, transverse, 1000,
                                      SamplingScheme::kPoisson, 1);
  const PointerProbabilities est = sc.estimated();
  CHECK(est.p0 == 0.0);
  CHECK(est.p1 == 0.0);
  CHECK(est.p_plus >= 0.0);
  CHECK_THROWS_AS(sc.estimated_probability(PointerOutcome::kZero),
                  std::invalid_argument);
  CHECK(sc.estimated_probability(PointerOutcome::kPlus) ==
        doctest::Approx(est.p_plus));
}

TEST_CASE("invalid sampling inputs are rejected") {
  const PointerProbabilities p = example_probs();
  CHECK_THROWS_AS(
      sample_counts(p, kAllBases, 0, SamplingScheme::kPoisson, 1),
      std::invalid_argument);
  CHECK_THROWS_AS(
      sample_counts(p, {}, 100, SamplingScheme::kPoisson, 1),
      std::invalid_argument);
  PointerProbabilities bad = p;
  bad.p_plus = -0.2;
  CHECK_THROWS_AS(
      sample_counts(bad, kAllBases, 100, SamplingScheme::kPoisson, 1),
      std::invalid_argument);
  // Tiny negative rounding noise is clamped, not rejected.
  PointerProbabilities noisy = p;
  noisy.p_minus = -1e-12;
  const ShotCounts sc =
      sample_counts(noisy, kAllBases, 100, SamplingScheme::kPoisson, 1);
  CHECK(sc.counts.size() == 3);
}

TEST_CASE("count variance matches the counting model") {
  // The two schemes differ in their variance: independent counts have
  // Var = n p, fixed-budget counts have Var = n p (1 - p). Estimated over
  // repetitions with a fixed seed, so this is a frozen regression rather
  // than a flaky statistical test.
  const PointerProbabilities p = example_probs();
  const double target = p.p_plus;
  const long long n = 10000;
  const int reps = 800;
  for (SamplingScheme scheme : {SamplingScheme::kPoisson,
                                SamplingScheme::kMultinomialWithDiscard}) {
    double sum = 0.0, sum2 = 0.0;
    for (int r = 0; r < reps; ++r) {
      const ShotCounts sc = sample_counts(
          p, std::array<PointerBasis, 1>{PointerBasis::kX}, n, scheme,
          mix_seed(404, static_cast<std::uint64_t>(r)));
      const double c = static_cast<double>(sc.counts[0].first);
      sum += c;
      sum2 += c * c;
    }
    const double mean = sum / reps;
    const double var = sum2 / reps - mean * mean;
    const double expected = scheme == SamplingScheme::kPoisson
                                ? double(n) * target
                                : double(n) * target * (1.0 - target);
    CHECK(std::abs(mean - double(n) * target) <=
          5.0 * std::sqrt(expected / reps));
    CHECK(var / expected > 0.85);
    CHECK(var / expected < 1.15);
  }
}

TEST_CASE("basis labels round-trip") {
  for (PointerBasis b : kAllBases) {
    CHECK(pointer_basis_from_label(to_label(b)) == b);
    CHECK(first_outcome(b) != second_outcome(b));
  }
  CHECK_THROWS_AS(pointer_basis_from_label("Q"), std::invalid_argument);
}
