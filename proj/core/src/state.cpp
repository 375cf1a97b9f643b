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

#include "dirtomo/state.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "dirtomo/rng.hpp"

namespace dirtomo {

namespace {

void require_finite(const Vector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) {
      throw std::invalid_argument("amplitudes must be finite");
    }
  }
}

void require_finite(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) {
        throw std::invalid_argument("matrix entries must be finite");
      }
    }
  }
}

Matrix validated_density(Matrix m, bool require_psd) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("density matrix must be square");
  }
  if (m.rows() < 2) {
    throw std::invalid_argument("density matrix dimension must be at least 2");
  }
  require_finite(m);
  const double herm_defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm_defect > kAlgebraTol) {
    throw std::invalid_argument("density matrix must be Hermitian");
  }
  if (std::abs(m.trace().real() - 1.0) > kAlgebraTol ||
      std::abs(m.trace().imag()) > kAlgebraTol) {
    throw std::invalid_argument("density matrix must have unit trace");
  }
  if (require_psd) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kEigenvalueTol) {
      throw std::invalid_argument("density matrix must be positive semidefinite");
    }
  }
  return m;
}

}  // namespace

StateVector StateVector::normalized(Vector raw) {
  if (raw.size() < 2) {
    throw std::invalid_argument("state dimension must be at least 2");
  }
  require_finite(raw);
  const double n = raw.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw std::invalid_argument("state must have nonzero norm");
  }
  raw /= n;
  const bool pathological = std::abs(raw.sum()) <= kAmpSumThreshold;
  return StateVector(std::move(raw), pathological);
}

StateVector normalize_and_fix_phase(const Vector& raw) {
  StateVector st = StateVector::normalized(raw);
  const Complex s = st.amp_sum();
  if (std::abs(s) <= kAmpSumThreshold) {
    return st;  // pathological: no usable phase reference, leave phase alone
  }
  Vector v = st.amplitudes() * (std::conj(s) / std::abs(s));
  return StateVector::normalized(std::move(v));
}

StateVector haar_random_state(int d, std::uint64_t seed) {
  if (d < 2) {
    throw std::invalid_argument("haar_random_state requires d >= 2");
  }
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector raw(d);
  for (int i = 0; i < d; ++i) {
    const double re = gauss(gen);
    const double im = gauss(gen);
    raw[i] = Complex(re, im);
  }
  return normalize_and_fix_phase(raw);
}

StateVector uniform_state(int d) {
  if (d < 2) {
    throw std::invalid_argument("uniform_state requires d >= 2");
  }
  Vector v = Vector::Constant(d, Complex(1.0 / std::sqrt(double(d)), 0.0));
  return StateVector::normalized(std::move(v));
}

StateVector momentum_rotated(const StateVector& psi, int momentum) {
  const int d = psi.dim();
  if (momentum < 0 || momentum >= d) {
    throw std::invalid_argument("momentum must lie in [0, d)");
  }
  if (momentum == 0) {
    return normalize_and_fix_phase(psi.amplitudes());
  }
  Vector v(d);
  const double w = -2.0 * std::numbers::pi * momentum / d;
  for (int x = 0; x < d; ++x) {
    v[x] = psi.amplitudes()[x] * std::polar(1.0, w * x);
  }
  return normalize_and_fix_phase(v);
}

double trace_distance_pure(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("trace_distance_pure: dimension mismatch");
  }
  const Complex ov = a.amplitudes().dot(b.amplitudes());
  const double r = std::abs(ov);
  if (r == 0.0) {
    return 1.0;
  }
  // sqrt(1 - r^2) loses all precision near r = 1 (identical states come out
  // around 1e-8). Align the global phase and measure the difference instead:
  // m = |a - e^{i phi} b|^2 / 2 equals 1 - r with no cancellation, and
  // 1 - r^2 = m (2 - m).
  const Complex phase = std::conj(ov) / r;
  const double m =
      (a.amplitudes() - phase * b.amplitudes()).squaredNorm() / 2.0;
  return std::sqrt(std::max(0.0, m * (2.0 - m)));
}

DensityMatrix DensityMatrix::physical(Matrix m) {
  return DensityMatrix(validated_density(std::move(m), /*require_psd=*/true));
}

DensityMatrix DensityMatrix::estimate(Matrix m) {
  return DensityMatrix(validated_density(std::move(m), /*require_psd=*/false));
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

DensityMatrix random_density_matrix(int d, int rank, std::uint64_t seed) {
  if (d < 2) {
    throw std::invalid_argument("random_density_matrix requires d >= 2");
  }
  if (rank < 1 || rank > d) {
    throw std::invalid_argument("random_density_matrix requires 1 <= rank <= d");
  }
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(d, rank);
  for (int j = 0; j < rank; ++j) {
    for (int i = 0; i < d; ++i) {
      g(i, j) = Complex(gauss(gen), gauss(gen));
    }
  }
  // Purification picture: Haar vector on a d x rank composite, ancilla
  // traced out. Positive semidefinite by construction.
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = ((rho + rho.adjoint()) / 2.0).eval();  // scrub rounding asymmetry
  return DensityMatrix::physical(std::move(rho));
}

double trace_distance_mixed(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("trace_distance_mixed: dimension mismatch");
  }
  const Matrix diff = a.entries() - b.entries();
  if ((diff - diff.adjoint()).cwiseAbs().maxCoeff() > 1e-9) {
    throw std::invalid_argument("trace_distance_mixed: difference not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(diff, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

WavefunctionStats wavefunction_stats(const StateVector& psi,
                                     CouplingAngle theta) {
  WavefunctionStats s{};
  s.psi_tilde = psi.amp_sum().real();
  Complex mean_psi(0.0, 0.0);
  double mean_abs2 = 0.0;
  double mean_re2 = 0.0;
  for (int x = 0; x < psi.dim(); ++x) {
    const Complex a = psi.amplitudes()[x];
    const double w = std::norm(a);
    mean_psi += a * w;
    mean_abs2 += w * w;
    mean_re2 += a.real() * a.real() * w;
  }
  s.mean_psi = mean_psi;
  s.mean_abs2 = mean_abs2;
  s.mean_re = mean_psi.real();
  s.mean_re2 = mean_re2;
  s.sigma_psi = std::sqrt(std::max(0.0, mean_abs2 - std::norm(mean_psi)));
  s.eps_theta = theta.epsilon();
  // hypot keeps norm_n exactly eps*sigma when the first term vanishes,
  // which makes the zero-amplitude-sum accuracy value an exact 1.
  const double re = s.psi_tilde - s.eps_theta * mean_psi.real();
  const double im = -s.eps_theta * mean_psi.imag();
  s.norm_n = std::hypot(std::hypot(re, im), s.eps_theta * s.sigma_psi);
  return s;
}

}  // namespace dirtomo
