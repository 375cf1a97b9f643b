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

#include "dirtomo/analysis.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "dirtomo/errors.hpp"

namespace dirtomo {

namespace {

void require_positive_shots(long long shots) {
  if (shots <= 0) {
    throw std::invalid_argument("shot budget must be positive");
  }
}

}  // namespace

StateVector dwt_closed_form(const StateVector& psi, CouplingAngle theta) {
  const WavefunctionStats s = wavefunction_stats(psi, theta);
  if (s.norm_n <= 0.0) {
    throw DegenerateInputError(
        "weak-coupling estimate undefined: normalizer is zero");
  }
  const double eps = s.eps_theta;
  Vector out(psi.dim());
  for (int x = 0; x < psi.dim(); ++x) {
    const Complex a = psi.amplitudes()(x);
    out(x) = a * (s.psi_tilde - eps * std::conj(a)) / s.norm_n;
  }
  return StateVector::normalized(out);
}

AccuracyReport accuracy(const StateVector& psi, CouplingAngle theta) {
  const WavefunctionStats s = wavefunction_stats(psi, theta);
  if (s.norm_n <= 0.0) {
    throw DegenerateInputError(
        "accuracy undefined: normalizer is zero");
  }
  const double eps = s.eps_theta;
  AccuracyReport r{};
  r.theta = theta.theta();
  r.trace_distance = eps * s.sigma_psi / s.norm_n;
  r.trace_distance_approx =
      s.psi_tilde > 0.0
          ? eps * s.sigma_psi / s.psi_tilde
          : std::numeric_limits<double>::infinity();
  r.psi_tilde_w = (s.psi_tilde * s.psi_tilde - eps) / s.norm_n;
  r.bound = dwt_error_bound(theta);
  return r;
}

double dwt_error_bound(CouplingAngle theta) {
  const double rt = std::sqrt(theta.epsilon());
  const double den = 2.0 - 4.0 * rt + 3.0 * rt * rt;
  return rt / std::sqrt(den);
}

double inversion_identity_lhs(const StateVector& psi, CouplingAngle theta) {
  const WavefunctionStats s = wavefunction_stats(psi, theta);
  return s.eps_theta * s.sigma_psi;
}

double inversion_identity_rhs(const StateVector& psi, CouplingAngle theta) {
  const WavefunctionStats s = wavefunction_stats(psi, theta);
  if (s.norm_n <= 0.0) {
    throw DegenerateInputError(
        "inversion identity undefined: normalizer is zero");
  }
  const double d = s.eps_theta * s.sigma_psi / s.norm_n;
  const double displaced =
      std::abs(Complex(s.psi_tilde, 0.0) - s.eps_theta * s.mean_psi);
  // d < 1 except for states whose entire weight sits in the displaced term;
  // clamp so the pathological d == 1 case maps to +inf * 0 == nan never.
  if (d >= 1.0) {
    return s.eps_theta * s.sigma_psi;  // identity holds trivially: rhs == lhs
  }
  return d / std::sqrt(1.0 - d * d) * displaced;
}

double delta_psi_weak(const StateVector& psi, CouplingAngle theta,
                      long long shots) {
  require_positive_shots(shots);
  const WavefunctionStats s = wavefunction_stats(psi, theta);
  if (s.norm_n <= 0.0) {
    throw DegenerateInputError(
        "weak-coupling precision undefined: normalizer is zero");
  }
  const double eps = s.eps_theta;
  const double t = s.psi_tilde;
  const int d = psi.dim();
  // Third bracket term: sum_x |w_x|^2 (t Re psi_x - |psi_x|^2) with w the
  // distorted estimate the sampler converges to.
  const StateVector w = dwt_closed_form(psi, theta);
  double cross = 0.0;
  for (int x = 0; x < d; ++x) {
    const Complex a = psi.amplitudes()(x);
    cross += std::norm(w.amplitudes()(x)) *
             (t * a.real() - std::norm(a));
  }
  const double bracket =
      (2.0 * d - 1.0) * t * t + 4.0 * eps * (1.0 - t * t) + 2.0 * eps * cross;
  const double pref =
      1.0 / (theta.sin_theta() * s.norm_n) *
      std::sqrt(static_cast<double>(d) / (2.0 * static_cast<double>(shots)));
  return pref * std::sqrt(std::max(0.0, bracket));
}

double delta_psi_weak_lower_bound(const StateVector& psi, CouplingAngle theta,
                                  long long shots) {
  require_positive_shots(shots);
  const WavefunctionStats s = wavefunction_stats(psi, theta);
  if (s.norm_n <= 0.0) {
    throw DegenerateInputError(
        "weak-coupling precision bound undefined: normalizer is zero");
  }
  const double eps = s.eps_theta;
  const double t = s.psi_tilde;
  const int d = psi.dim();
  const double bracket =
      (2.0 * d - 1.0) * t * t + 2.0 * eps * (1.0 - t - 2.0 * t * t);
  const double pref =
      1.0 / (theta.sin_theta() * s.norm_n) *
      std::sqrt(static_cast<double>(d) / (2.0 * static_cast<double>(shots)));
  return pref * std::sqrt(std::max(0.0, bracket));
}

double delta_psi_arbitrary(const StateVector& psi, CouplingAngle theta,
                           long long shots) {
  require_positive_shots(shots);
  const WavefunctionStats s = wavefunction_stats(psi, theta);
  if (s.psi_tilde <= 0.0) {
    throw DegenerateInputError(
        "exact-estimator precision undefined: amplitude sum is zero");
  }
  const double eps = s.eps_theta;
  const double t = s.psi_tilde;
  const int d = psi.dim();
  const double bracket = (2.0 * d - 1.0) * t * t +
                         4.0 * eps * (1.0 + eps - t * t) +
                         2.0 * eps * t * s.mean_re - 2.0 * eps * s.mean_abs2 -
                         4.0 * eps * eps * s.mean_re2;
  const double pref =
      1.0 / (t * theta.sin_theta()) *
      std::sqrt(3.0 * static_cast<double>(d) /
                (4.0 * static_cast<double>(shots)));
  return pref * std::sqrt(std::max(0.0, bracket));
}

double delta_psi_strong(const StateVector& psi, long long shots) {
  return delta_psi_arbitrary(psi, CouplingAngle::strong(), shots);
}

double delta_psi_strong_upper_bound(double psi_tilde, int d, long long shots) {
  require_positive_shots(shots);
  if (d < 2) {
    throw std::invalid_argument("dimension must be at least 2");
  }
  if (psi_tilde <= 0.0) {
    throw DegenerateInputError(
        "strong-coupling precision bound undefined: amplitude sum is zero");
  }
  const double t = psi_tilde;
  const double bracket =
      (2.0 * d - 5.0) * t * t + 2.0 * t + 8.0 - 2.0 / static_cast<double>(d);
  const double pref = 1.0 / t *
                      std::sqrt(3.0 * static_cast<double>(d) /
                                (4.0 * static_cast<double>(shots)));
  return pref * std::sqrt(std::max(0.0, bracket));
}

std::optional<double> precision_ratio_bound_at(double psi_tilde,
                                               CouplingAngle theta0, int d) {
  if (d < 2) {
    throw std::invalid_argument("dimension must be at least 2");
  }
  if (psi_tilde <= 0.0) {
    return std::nullopt;
  }
  const double eps = theta0.epsilon();
  const double t = psi_tilde;
  const double num =
      (2.0 * d - 5.0) * t * t + 2.0 * t + 8.0 - 2.0 / static_cast<double>(d);
  const double den =
      (2.0 * d - 1.0) * t * t + 2.0 * eps * (1.0 - t - 2.0 * t * t);
  if (den <= 0.0 || num < 0.0) {
    return std::nullopt;
  }
  return theta0.sin_theta() * std::sqrt(1.5) * std::sqrt(num / den);
}

std::optional<double> precision_ratio_bound(const StateVector& psi,
                                            CouplingAngle theta0) {
  const WavefunctionStats s = wavefunction_stats(psi, theta0);
  return precision_ratio_bound_at(s.psi_tilde, theta0, psi.dim());
}

std::optional<double> precision_ratio_bound_exact(const StateVector& psi,
                                                  CouplingAngle theta0) {
  const WavefunctionStats s = wavefunction_stats(psi, theta0);
  const std::optional<double> base =
      precision_ratio_bound_at(s.psi_tilde, theta0, psi.dim());
  if (!base.has_value() || s.psi_tilde <= 0.0) {
    return std::nullopt;
  }
  return *base * s.norm_n / s.psi_tilde;
}

std::optional<double> precision_ratio_bound_large_sum(CouplingAngle theta0,
                                                      int d) {
  if (d < 3) {
    return std::nullopt;
  }
  return theta0.sin_theta() * std::sqrt(1.5) *
         std::sqrt((2.0 * d - 5.0) / (2.0 * d - 1.0));
}

double psi_tilde_from_indicator(double psi_tilde_w, CouplingAngle theta) {
  const double eps = theta.epsilon();
  const double w = psi_tilde_w;
  return 0.5 * (w + std::sqrt(w * w + 4.0 * eps));
}

PrecisionReport precision_report(const StateVector& psi, CouplingAngle theta0,
                                 long long shots) {
  PrecisionReport r{};
  r.delta_weak = delta_psi_weak(psi, theta0, shots);
  r.delta_strong = delta_psi_strong(psi, shots);
  r.ratio = r.delta_strong / r.delta_weak;
  r.ratio_bound = precision_ratio_bound(psi, theta0);
  r.shots = shots;
  return r;
}

DensityMatrix mixed_dwt_closed_form(const DensityMatrix& rho,
                                    CouplingAngle theta) {
  const double c = theta.cos_theta();
  if (c <= 1e-9) {
    throw std::invalid_argument(
        "weak-coupling density estimate undefined at theta = pi/2 "
        "(estimate trace vanishes); use the strong-coupling correction");
  }
  Matrix m = rho.entries();
  const int d = rho.dim();
  for (int x = 0; x < d; ++x) {
    m(x, x) += (c - 1.0) * rho.entries()(x, x);
  }
  m /= c;
  return DensityMatrix::estimate(m);
}

double mixed_accuracy(const DensityMatrix& rho, CouplingAngle theta) {
  const double c = theta.cos_theta();
  if (c <= 1e-9) {
    throw std::invalid_argument(
        "weak-coupling accuracy undefined at theta = pi/2");
  }
  Matrix off = rho.entries();
  for (int x = 0; x < rho.dim(); ++x) {
    off(x, x) = Complex(0.0, 0.0);
  }
  // tr |rho - diag(rho)| as the sum of singular magnitudes of the
  // Hermitian off-diagonal part.
  Eigen::SelfAdjointEigenSolver<Matrix> solver(off);
  const double tr_abs = solver.eigenvalues().cwiseAbs().sum();
  return (1.0 - c) / (2.0 * c) * tr_abs;
}

}  // namespace dirtomo
