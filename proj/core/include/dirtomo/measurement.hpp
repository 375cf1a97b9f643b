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

#include <string_view>

#include "dirtomo/coupling.hpp"
#include "dirtomo/state.hpp"

namespace dirtomo {

/// The six pointer readout outcomes: computational basis {0,1}, diagonal
/// basis {+,-}, circular basis {L,R}.
enum class PointerOutcome { kZero, kOne, kPlus, kMinus, kLeft, kRight };

PointerOutcome pointer_outcome_from_label(std::string_view label);
std::string_view to_label(PointerOutcome outcome);

/// Post-selected pointer readout probabilities for one (site, momentum,
/// theta) setting. Exact values satisfy
///   p0 + p1 == p_plus + p_minus == p_left + p_right
/// (the momentum post-selection probability); finite-shot estimates stored
/// in the same struct need not.
struct PointerProbabilities {
  double p0 = 0.0;
  double p1 = 0.0;
  double p_plus = 0.0;
  double p_minus = 0.0;
  double p_left = 0.0;
  double p_right = 0.0;
  int site = 0;
  int momentum = 0;
  double theta = 0.0;

  double operator[](PointerOutcome j) const;
  double post_selection_z() const { return p0 + p1; }
};

/// Coupling unitary on the (system x pointer) composite, dimension 2d.
/// Index convention: composite index = 2*x + a for site x, pointer bit a.
/// Acts as the identity except on site `site`, where the pointer is rotated
/// |0> -> cos(theta)|0> + sin(theta)|1>, |1> -> -sin(theta)|0> + cos(theta)|1>.
Matrix coupling_unitary(int d, int site, CouplingAngle theta);

/// Closed-form readout probabilities after coupling at `site` and
/// post-selecting the system on the momentum state
/// |p> = d^{-1/2} sum_x exp(2 pi i x p / d) |x>.
///
/// For momentum != 0 the state is first rotated with momentum_rotated(),
/// which reduces the problem to the momentum-0 formulas. psi is assumed
/// phase-fixed (amplitude sum real, >= 0).
PointerProbabilities exact_pointer_probabilities(const StateVector& psi,
                                                 int site, CouplingAngle theta,
                                                 int momentum = 0);

/// Brute-force oracle for exact_pointer_probabilities: builds the full
/// 2d-dimensional composite state, applies coupling_unitary, and projects
/// onto |p> x |pointer outcome>. Shares no algebra with the closed forms;
/// kept as an independent cross-check.
PointerProbabilities exact_pointer_probabilities_oracle(const StateVector& psi,
                                                        int site,
                                                        CouplingAngle theta,
                                                        int momentum = 0);

/// Kraus operator E_j of the post-selected readout: a d x d system operator
/// with P_j = tr(E_j^dag E_j |psi><psi|) = || E_j |psi> ||^2.
/// E_j = alpha_j |p0><p0| - gamma_j |p0><site| with alpha_j = <e_j|0>,
/// beta_j = <e_j|1>, gamma_j = ((1 - cos theta) alpha_j - sin(theta) beta_j)/sqrt(d).
/// The six elements cover only the momentum-0 post-selected arm; they do not
/// form a complete POVM on their own.
Matrix povm_element(int d, int site, CouplingAngle theta, PointerOutcome j);

/// 2x2 pointer state after coupling a density matrix at `site` and
/// post-selecting the system on momentum `momentum` (unnormalized: its trace
/// is the post-selection probability for that momentum).
struct PointerDensity {
  Eigen::Matrix2cd m;
  int site = 0;
  int momentum = 0;
  double theta = 0.0;

  double post_selection_probability() const { return m.trace().real(); }
  /// Diagonal of m in each of the three readout bases.
  PointerProbabilities probabilities() const;
};

PointerDensity pointer_density_mixed(const DensityMatrix& rho, int site,
                                     int momentum, CouplingAngle theta);

}  // namespace dirtomo
