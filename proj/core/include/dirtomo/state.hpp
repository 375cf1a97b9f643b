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

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

#include "dirtomo/coupling.hpp"

namespace dirtomo {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

/// Tolerance for algebraic identities checked at runtime.
inline constexpr double kAlgebraTol = 1e-12;
/// Tolerance for eigenvalue positivity checks.
inline constexpr double kEigenvalueTol = 1e-10;
/// |sum of amplitudes| at or below this marks a state as pathological:
/// such a state post-selects to nothing at momentum 0 and has no usable
/// global-phase convention there.
inline constexpr double kAmpSumThreshold = 1e-12;

/// Pure state on a d-dimensional position basis (d >= 2), unit norm.
///
/// Amplitudes are indexed by site x in [0, d). States produced by
/// normalize_and_fix_phase / haar_random_state carry the convention that
/// the amplitude sum is real and non-negative; reconstruction estimates
/// keep whatever phase the estimator formula produced (a negative real
/// amplitude sum on an estimate is meaningful diagnostics, not an error).
class StateVector {
 public:
  /// Normalize to unit norm, keep the global phase as given.
  static StateVector normalized(Vector raw);

  int dim() const { return static_cast<int>(amps_.size()); }
  const Vector& amplitudes() const { return amps_; }

  /// Sum of amplitudes (real and >= 0 for phase-fixed states).
  Complex amp_sum() const { return amps_.sum(); }

  /// True when |amp_sum| <= kAmpSumThreshold.
  bool pathological() const { return pathological_; }

 private:
  StateVector(Vector amps, bool pathological)
      : amps_(std::move(amps)), pathological_(pathological) {}

  Vector amps_;
  bool pathological_;
};

/// Normalize and rotate the global phase so the amplitude sum is real and
/// non-negative. If the sum vanishes (|sum| <= kAmpSumThreshold) the phase
/// is left untouched and the state is flagged pathological.
StateVector normalize_and_fix_phase(const Vector& raw);

/// Haar-random pure state: i.i.d. standard complex Gaussian amplitudes,
/// normalized and phase-fixed. Deterministic in (d, seed).
StateVector haar_random_state(int d, std::uint64_t seed);

/// Equal-amplitude state (1, 1, ..., 1)/sqrt(d).
StateVector uniform_state(int d);

/// Rotate amplitudes by the momentum-p post-selection phase map
/// psi_x -> psi_x * exp(-2 pi i x p / d), then re-fix the global phase.
/// momentum must lie in [0, d).
StateVector momentum_rotated(const StateVector& psi, int momentum);

/// Trace distance between pure states: sqrt(1 - |<a|b>|^2).
/// Invariant under global phases of either argument.
double trace_distance_pure(const StateVector& a, const StateVector& b);

/// Density matrix on d >= 2 sites: Hermitian, unit trace.
///
/// physical() additionally requires positive semidefiniteness;
/// estimate() admits the indefinite matrices produced by weak-coupling
/// reconstruction.
class DensityMatrix {
 public:
  static DensityMatrix physical(Matrix m);
  static DensityMatrix estimate(Matrix m);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& entries() const { return m_; }

  /// Eigenvalues in increasing order (self-adjoint solver).
  Eigen::VectorXd eigenvalues() const;

 private:
  explicit DensityMatrix(Matrix m) : m_(std::move(m)) {}
  Matrix m_;
};

/// Random density matrix of the given rank: partial trace of a Haar-random
/// pure state on a d x rank composite. rank = 1 gives a pure projector,
/// rank = d concentrates around the maximally mixed state.
DensityMatrix random_density_matrix(int d, int rank, std::uint64_t seed);

/// Trace distance (1/2) tr |a - b| via the spectrum of the Hermitian
/// difference.
double trace_distance_mixed(const DensityMatrix& a, const DensityMatrix& b);

/// Scalar functionals of a phase-fixed state that all closed forms are
/// built from, evaluated at one coupling angle.
struct WavefunctionStats {
  double psi_tilde;    ///< amplitude sum (real part; >= 0 under the convention)
  Complex mean_psi;    ///< sum_x psi_x |psi_x|^2
  double mean_abs2;    ///< sum_x |psi_x|^4
  double mean_re;      ///< sum_x Re(psi_x) |psi_x|^2  (= Re mean_psi)
  double mean_re2;     ///< sum_x Re(psi_x)^2 |psi_x|^2
  double sigma_psi;    ///< sqrt(mean_abs2 - |mean_psi|^2), clamped at 0
  double eps_theta;    ///< back-action strength of the angle used
  double norm_n;       ///< sqrt(|psi_tilde - eps*mean_psi|^2 + eps^2 sigma^2)
};

WavefunctionStats wavefunction_stats(const StateVector& psi,
                                     CouplingAngle theta);

}  // namespace dirtomo
