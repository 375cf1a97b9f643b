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

#include "dirtomo/sampling.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace dirtomo {

namespace {

double clamp_probability(double p) {
  if (p < -1e-9 || p > 1.0 + 1e-9) {
    throw std::invalid_argument("probability outside [0, 1]");
  }
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace

PointerBasis pointer_basis_from_label(std::string_view label) {
  if (label == "Z") return PointerBasis::kZ;
  if (label == "X") return PointerBasis::kX;
  if (label == "Y") return PointerBasis::kY;
  throw std::invalid_argument("unknown pointer basis label");
}

std::string_view to_label(PointerBasis basis) {
  switch (basis) {
    case PointerBasis::kZ:
      return "Z";
    case PointerBasis::kX:
      return "X";
    case PointerBasis::kY:
      return "Y";
  }
  throw std::invalid_argument("unknown pointer basis");
}

PointerOutcome first_outcome(PointerBasis basis) {
  switch (basis) {
    case PointerBasis::kZ:
      return PointerOutcome::kZero;
    case PointerBasis::kX:
      return PointerOutcome::kPlus;
    case PointerBasis::kY:
      return PointerOutcome::kLeft;
  }
  throw std::invalid_argument("unknown pointer basis");
}

PointerOutcome second_outcome(PointerBasis basis) {
  switch (basis) {
    case PointerBasis::kZ:
      return PointerOutcome::kOne;
    case PointerBasis::kX:
      return PointerOutcome::kMinus;
    case PointerBasis::kY:
      return PointerOutcome::kRight;
  }
  throw std::invalid_argument("unknown pointer basis");
}

double ShotCounts::estimated_probability(PointerOutcome j) const {
  for (const BasisCounts& bc : counts) {
    if (first_outcome(bc.basis) == j) {
      return double(bc.first) / double(trials_per_basis);
    }
    if (second_outcome(bc.basis) == j) {
      return double(bc.second) / double(trials_per_basis);
    }
  }
  throw std::invalid_argument("outcome's basis was not sampled");
}

PointerProbabilities ShotCounts::estimated() const {
  PointerProbabilities p;
  p.site = site;
  p.momentum = momentum;
  p.theta = theta;
  for (const BasisCounts& bc : counts) {
    const double a = double(bc.first) / double(trials_per_basis);
    const double b = double(bc.second) / double(trials_per_basis);
    switch (bc.basis) {
      case PointerBasis::kZ:
        p.p0 = a;
        p.p1 = b;
        break;
      case PointerBasis::kX:
        p.p_plus = a;
        p.p_minus = b;
        break;
      case PointerBasis::kY:
        p.p_left = a;
        p.p_right = b;
        break;
    }
  }
  return p;
}

ShotCounts sample_counts(const PointerProbabilities& probs,
                         std::span<const PointerBasis> bases,
                         long long trials_per_basis, SamplingScheme scheme,
                         std::uint64_t seed) {
  if (trials_per_basis < 1) {
    throw std::invalid_argument("trials_per_basis must be positive");
  }
  if (bases.empty()) {
    throw std::invalid_argument("at least one basis must be sampled");
  }
  std::mt19937_64 gen(seed);
  ShotCounts sc;
  sc.trials_per_basis = trials_per_basis;
  sc.scheme = scheme;
  sc.site = probs.site;
  sc.momentum = probs.momentum;
  sc.theta = probs.theta;
  sc.counts.reserve(bases.size());
  for (PointerBasis basis : bases) {
    const double pa = clamp_probability(probs[first_outcome(basis)]);
    double pb = clamp_probability(probs[second_outcome(basis)]);
    if (pa + pb > 1.0 + 1e-9) {
      throw std::invalid_argument("basis probabilities exceed 1");
    }
    pb = std::min(pb, 1.0 - pa);
    BasisCounts bc;
    bc.basis = basis;
    if (scheme == SamplingScheme::kMultinomialWithDiscard) {
      // Conditional-binomial factorization of the trinomial
      // (first, second, discard).
      std::binomial_distribution<long long> da(trials_per_basis, pa);
      bc.first = da(gen);
      const long long rest = trials_per_basis - bc.first;
      if (rest > 0 && pa < 1.0) {
        std::binomial_distribution<long long> db(rest, std::min(1.0, pb / (1.0 - pa)));
        bc.second = db(gen);
      }
      bc.discard = trials_per_basis - bc.first - bc.second;
    } else {
      std::poisson_distribution<long long> da(double(trials_per_basis) * pa);
      std::poisson_distribution<long long> db(double(trials_per_basis) * pb);
      bc.first = pa > 0.0 ? da(gen) : 0;
      bc.second = pb > 0.0 ? db(gen) : 0;
      bc.discard = 0;  // no fixed trial budget under the Poisson model
    }
    sc.counts.push_back(bc);
  }
  return sc;
}

}  // namespace dirtomo
