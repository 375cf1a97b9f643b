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

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dirtomo/measurement.hpp"

namespace dirtomo {

/// Readout basis of the pointer qubit.
enum class PointerBasis { kZ, kX, kY };  // {0,1}, {+,-}, {L,R}

PointerBasis pointer_basis_from_label(std::string_view label);
std::string_view to_label(PointerBasis basis);

/// The two outcomes of a basis, in (first, second) order.
PointerOutcome first_outcome(PointerBasis basis);
PointerOutcome second_outcome(PointerBasis basis);

/// How finite-shot counts are drawn.
///
/// kMultinomialWithDiscard: each of the N_b trials lands on (first, second,
/// discard), where discard models the post-selection failing; counts sum to
/// N_b exactly. kPoisson: each outcome count is an independent Poisson draw
/// with mean N_b * P, the variance model the asymptotic precision formulas
/// assume. The two schemes agree asymptotically when all P are small.
enum class SamplingScheme { kMultinomialWithDiscard, kPoisson };

struct BasisCounts {
  PointerBasis basis;
  long long first = 0;
  long long second = 0;
  long long discard = 0;
};

/// Finite-shot record for one (site, momentum, theta) setting.
struct ShotCounts {
  std::vector<BasisCounts> counts;
  long long trials_per_basis = 0;
  SamplingScheme scheme = SamplingScheme::kMultinomialWithDiscard;
  int site = 0;
  int momentum = 0;
  double theta = 0.0;

  /// n_j / trials_per_basis; throws if the outcome's basis was not sampled.
  double estimated_probability(PointerOutcome j) const;

  /// Estimated PointerProbabilities: sampled bases filled with n/N_b,
  /// unsampled bases left at zero. Feed directly to the estimators.
  PointerProbabilities estimated() const;
};

/// Draw counts for the requested bases, trials_per_basis each, consuming one
/// RNG stream in basis order. Deterministic in (probs, bases, N_b, scheme,
/// seed). Probability pairs must satisfy p_first + p_second <= 1 + 1e-9.
ShotCounts sample_counts(const PointerProbabilities& probs,
                         std::span<const PointerBasis> bases,
                         long long trials_per_basis, SamplingScheme scheme,
                         std::uint64_t seed);

}  // namespace dirtomo
