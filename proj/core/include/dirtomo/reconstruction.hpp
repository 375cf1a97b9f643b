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

#include <optional>
#include <span>
#include <variant>

#include "dirtomo/measurement.hpp"

namespace dirtomo {

enum class Method { kWeak, kStrong, kArbitrary, kMixedWeak, kMixedStrong };

std::string_view to_label(Method method);
Method method_from_label(std::string_view label);

/// Output of any estimator.
///
/// For the pure-state methods, `estimate` holds a unit-norm StateVector in
/// the estimator's own global phase (never re-fixed), psi_tilde_w is the
/// real part of the sum of estimated amplitudes, and sufficiency_ok records
/// whether sum_x (P_plus - P_minus) >= 0, the data-level indicator that the
/// weak-coupling sign convention is trustworthy. bound_value carries the
/// theta-only accuracy bound for the weak method.
struct ReconstructionResult {
  std::variant<StateVector, DensityMatrix> estimate;
  Method method;
  double theta = 0.0;
  double psi_tilde_w = 0.0;
  bool sufficiency_ok = true;
  std::optional<double> bound_value;

  const StateVector& state() const { return std::get<StateVector>(estimate); }
  const DensityMatrix& density() const {
    return std::get<DensityMatrix>(estimate);
  }
};

/// Weak-coupling estimator: amplitude_x proportional to
/// (P_plus - P_minus) + i (P_left - P_right), normalized by the Euclidean
/// norm of the coefficient list. Approximate for theta > 0: the estimate
/// carries a known distortion (see analysis.hpp). `probs` holds one entry
/// per site, in site order, all at the same theta.
ReconstructionResult dwt_estimate(std::span<const PointerProbabilities> probs,
                                  CouplingAngle theta);

/// Strong-coupling estimator (theta = pi/2): amplitude_x proportional to
/// (P_plus - P_minus + 2 P_1) + i (P_left - P_right). Exact on exact inputs.
ReconstructionResult dst_estimate(std::span<const PointerProbabilities> probs);

/// Exact estimator at any theta in (0, pi/2]: amplitude_x proportional to
/// (P_plus - P_minus + 2 tan(theta/2) P_1) + i (P_left - P_right).
/// Reduces to dst_estimate at theta = pi/2.
ReconstructionResult arbitrary_theta_estimate(
    std::span<const PointerProbabilities> probs, CouplingAngle theta);

/// Pointer matrix elements recovered from one readout sextuple:
/// rho10 = <1|rho_pointer|0> = ((P_plus - P_minus) + i (P_left - P_right))/2,
/// rho11 = P_1. The sign of the imaginary part is pinned by requiring
/// agreement with pointer_density_mixed (see the unit tests).
struct PointerMoment {
  Complex rho10;
  double rho11 = 0.0;
};

PointerMoment pointer_tomography(const PointerProbabilities& probs);

/// Pointer tomography results over the full (site, momentum) grid:
/// rho10(x, p) in row x, column p; rho11(x, p) likewise (constant in p on
/// exact inputs). Both must be d x d with d >= 2.
struct PointerTomogram {
  Matrix rho10;
  Eigen::MatrixXd rho11;

  int dim() const { return static_cast<int>(rho10.rows()); }
};

/// Build the exact tomogram of a density matrix at one coupling angle.
PointerTomogram exact_tomogram(const DensityMatrix& rho, CouplingAngle theta);

/// Build the tomogram from per-(site, momentum) probability sextuples.
PointerTomogram
tomogram_from_probabilities(std::span<const PointerProbabilities> probs, int d);

/// Weak-coupling density-matrix estimator. Inverse-Fourier the rho10 table
/// over momentum, Hermitize, normalize the trace. Recovers
/// (rho + (cos(theta) - 1) diag(rho)) / cos(theta) exactly on exact inputs;
/// degenerate at theta = pi/2, where the trace vanishes.
ReconstructionResult mixed_dwt_estimate(const PointerTomogram& tomogram,
                                        CouplingAngle theta);

/// Exact density-matrix estimator at any theta in (0, pi/2]: adds the
/// d tan(theta/2) rho11 diagonal correction before Hermitizing and
/// normalizing. rho11 is averaged over momentum.
ReconstructionResult mixed_dst_estimate(const PointerTomogram& tomogram,
                                        CouplingAngle theta);

}  // namespace dirtomo
