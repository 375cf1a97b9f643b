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

#include "dirtomo/state.hpp"

namespace dirtomo {

/// Closed form of the state the weak-coupling estimator converges to on
/// exact inputs: amplitude_x = psi_x (t - eps conj(psi_x)) / norm_n, with
/// t the amplitude sum. Equals dwt_estimate on exact probabilities to
/// rounding. Returned in the formula's own phase (not re-fixed).
StateVector dwt_closed_form(const StateVector& psi, CouplingAngle theta);

/// Accuracy of the weak-coupling estimator on one state.
struct AccuracyReport {
  double trace_distance;         ///< eps sigma / norm_n, exactly the
                                 ///< pure-state trace distance to the
                                 ///< distorted estimate
  double trace_distance_approx;  ///< eps sigma / psi_tilde (first order)
  double psi_tilde_w;            ///< (psi_tilde^2 - eps) / norm_n, the
                                 ///< amplitude sum of the distorted estimate
  double bound;                  ///< dwt_error_bound(theta)
  double theta;
};

AccuracyReport accuracy(const StateVector& psi, CouplingAngle theta);

/// theta-only accuracy bound sqrt(eps) / sqrt(2 - 4 sqrt(eps) + 3 eps),
/// valid whenever psi_tilde_w >= 0 (approximately theta/2 for small theta).
double dwt_error_bound(CouplingAngle theta);

/// Identity linking the observable distortion back to the state:
/// eps sigma = D / sqrt(1 - D^2) * |psi_tilde - eps <psi>|.
/// Exposed as the left/right pair for property tests.
double inversion_identity_lhs(const StateVector& psi, CouplingAngle theta);
double inversion_identity_rhs(const StateVector& psi, CouplingAngle theta);

/// Predicted asymptotic statistical error sqrt(sum_x |delta psi_x|^2) of
/// the weak-coupling estimator with a total budget of `shots` trials per
/// site (split over 2 readout bases, Poisson counting statistics).
double delta_psi_weak(const StateVector& psi, CouplingAngle theta,
                      long long shots);

/// Same, displayed lower bound (state enters via its amplitude sum only).
double delta_psi_weak_lower_bound(const StateVector& psi, CouplingAngle theta,
                                  long long shots);

/// Predicted statistical error of the exact estimator at any theta
/// (budget split over 3 readout bases). Throws DegenerateInputError when
/// the amplitude sum vanishes.
double delta_psi_arbitrary(const StateVector& psi, CouplingAngle theta,
                           long long shots);

/// Strong-coupling specialization (theta = pi/2).
double delta_psi_strong(const StateVector& psi, long long shots);

/// State-independent-profile upper bound on delta_psi_strong given the
/// amplitude sum: (1/t) sqrt(3d/4N) sqrt((2d-5) t^2 + 2t + 8 - 2/d).
double delta_psi_strong_upper_bound(double psi_tilde, int d, long long shots);

/// Approximate upper bound on the precision ratio
/// delta_psi_strong / delta_psi_weak at coupling theta0, evaluated with the
/// state's amplitude sum and the norm_n/psi_tilde factor set to 1.
/// nullopt when the weak-side denominator is non-positive (possible at
/// small amplitude sum).
std::optional<double> precision_ratio_bound(const StateVector& psi,
                                            CouplingAngle theta0);

/// Same bound as a function of the amplitude sum value alone (used to draw
/// the bound over an estimated amplitude sum).
std::optional<double> precision_ratio_bound_at(double psi_tilde,
                                               CouplingAngle theta0, int d);

/// Variant keeping the norm_n / psi_tilde factor.
std::optional<double> precision_ratio_bound_exact(const StateVector& psi,
                                                  CouplingAngle theta0);

/// Large-amplitude-sum limit sin(theta0) sqrt(3/2) sqrt((2d-5)/(2d-1));
/// nullopt for d < 3.
std::optional<double> precision_ratio_bound_large_sum(CouplingAngle theta0,
                                                      int d);

/// Recover the amplitude sum from the estimator's observable amplitude-sum
/// indicator w = (t^2 - eps)/t ... solved as t = (w + sqrt(w^2 + 4 eps))/2.
/// Exact when norm_n = psi_tilde; used to draw bounds against measured data.
double psi_tilde_from_indicator(double psi_tilde_w, CouplingAngle theta);

/// Bundle of the precision predictions for one state.
struct PrecisionReport {
  double delta_weak;
  double delta_strong;
  double ratio;  ///< delta_strong / delta_weak (shot count cancels)
  std::optional<double> ratio_bound;
  long long shots;
};

PrecisionReport precision_report(const StateVector& psi, CouplingAngle theta0,
                                 long long shots);

/// Closed form of the weak-coupling density-matrix estimate:
/// (rho + (cos(theta) - 1) diag(rho)) / cos(theta). Hermitian, unit trace,
/// possibly indefinite. Throws std::invalid_argument at theta = pi/2.
DensityMatrix mixed_dwt_closed_form(const DensityMatrix& rho,
                                    CouplingAngle theta);

/// Trace distance between rho and its weak-coupling estimate:
/// (1 - cos theta) / (2 cos theta) * tr |rho - diag(rho)|.
double mixed_accuracy(const DensityMatrix& rho, CouplingAngle theta);

}  // namespace dirtomo
