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

#include "dirtomo/measurement.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dirtomo {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void require_site(int d, int site) {
  if (site < 0 || site >= d) {
    throw std::invalid_argument("site must lie in [0, d)");
  }
}

void require_momentum(int d, int momentum) {
  if (momentum < 0 || momentum >= d) {
    throw std::invalid_argument("momentum must lie in [0, d)");
  }
}

/// <e_j|0> and <e_j|1> for each readout outcome.
struct OutcomeVector {
  Complex alpha;
  Complex beta;
};

OutcomeVector outcome_vector(PointerOutcome j) {
  switch (j) {
    case PointerOutcome::kZero:
      return {Complex(1, 0), Complex(0, 0)};
    case PointerOutcome::kOne:
      return {Complex(0, 0), Complex(1, 0)};
    case PointerOutcome::kPlus:
      return {Complex(kInvSqrt2, 0), Complex(kInvSqrt2, 0)};
    case PointerOutcome::kMinus:
      return {Complex(kInvSqrt2, 0), Complex(-kInvSqrt2, 0)};
    case PointerOutcome::kLeft:
      // |L> = (|0> + i|1>)/sqrt(2), so <L|1> = -i/sqrt(2).
      return {Complex(kInvSqrt2, 0), Complex(0, -kInvSqrt2)};
    case PointerOutcome::kRight:
      return {Complex(kInvSqrt2, 0), Complex(0, kInvSqrt2)};
  }
  throw std::invalid_argument("unknown pointer outcome");
}

constexpr std::array<PointerOutcome, 6> kAllOutcomes = {
    PointerOutcome::kZero,  PointerOutcome::kOne,  PointerOutcome::kPlus,
    PointerOutcome::kMinus, PointerOutcome::kLeft, PointerOutcome::kRight};

}  // namespace

double PointerProbabilities::operator[](PointerOutcome j) const {
  switch (j) {
    case PointerOutcome::kZero:
      return p0;
    case PointerOutcome::kOne:
      return p1;
    case PointerOutcome::kPlus:
      return p_plus;
    case PointerOutcome::kMinus:
      return p_minus;
    case PointerOutcome::kLeft:
      return p_left;
    case PointerOutcome::kRight:
      return p_right;
  }
  throw std::invalid_argument("unknown pointer outcome");
}

PointerOutcome pointer_outcome_from_label(std::string_view label) {
  if (label == "0") return PointerOutcome::kZero;
  if (label == "1") return PointerOutcome::kOne;
  if (label == "+") return PointerOutcome::kPlus;
  if (label == "-") return PointerOutcome::kMinus;
  if (label == "L") return PointerOutcome::kLeft;
  if (label == "R") return PointerOutcome::kRight;
  throw std::invalid_argument("unknown pointer outcome label");
}

std::string_view to_label(PointerOutcome outcome) {
  switch (outcome) {
    case PointerOutcome::kZero:
      return "0";
    case PointerOutcome::kOne:
      return "1";
    case PointerOutcome::kPlus:
      return "+";
    case PointerOutcome::kMinus:
      return "-";
    case PointerOutcome::kLeft:
      return "L";
    case PointerOutcome::kRight:
      return "R";
  }
  throw std::invalid_argument("unknown pointer outcome");
}

Matrix coupling_unitary(int d, int site, CouplingAngle theta) {
  if (d < 1) {
    throw std::invalid_argument("coupling_unitary requires d >= 1");
  }
  require_site(d, site);
  Matrix u = Matrix::Identity(2 * d, 2 * d);
  const double c = theta.cos_theta();
  const double s = theta.sin_theta();
  u(2 * site, 2 * site) = Complex(c, 0);
  u(2 * site, 2 * site + 1) = Complex(-s, 0);
  u(2 * site + 1, 2 * site) = Complex(s, 0);
  u(2 * site + 1, 2 * site + 1) = Complex(c, 0);
  return u;
}

PointerProbabilities exact_pointer_probabilities(const StateVector& psi,
                                                 int site, CouplingAngle theta,
                                                 int momentum) {
  const int d = psi.dim();
  require_site(d, site);
  require_momentum(d, momentum);
  const StateVector& work =
      momentum == 0 ? psi : momentum_rotated(psi, momentum);
  // The momentum-p problem reduces exactly to momentum 0 on the rotated
  // state, so only the p = 0 formulas are needed here.
  const double t = work.amp_sum().real();
  const Complex c = work.amplitudes()[site];
  const double eps = theta.epsilon();
  const double st = theta.sin_theta();

  // Post-selected (unnormalized) pointer state is
  //   d^{-1/2} [ (t - eps*c) |0> + sin(theta)*c |1> ],
  // and every probability is a squared readout amplitude of it; evaluating
  // |.|^2 directly keeps all six values non-negative to the last ulp.
  const Complex a0 = Complex(t, 0) - eps * c;
  const Complex a1 = st * c;

  PointerProbabilities p;
  p.p0 = std::norm(a0) / d;
  p.p1 = std::norm(a1) / d;
  p.p_plus = std::norm(a0 + a1) / (2.0 * d);
  p.p_minus = std::norm(a0 - a1) / (2.0 * d);
  // Circular readout has the same +/- structure with a1 -> -i*a1; the
  // asymmetry between L and R is proportional to sin(theta). The
  // state-vector oracle pins this coefficient.
  p.p_left = std::norm(a0 - Complex(0, 1) * a1) / (2.0 * d);
  p.p_right = std::norm(a0 + Complex(0, 1) * a1) / (2.0 * d);
  p.site = site;
  p.momentum = momentum;
  p.theta = theta.theta();
  return p;
}

PointerProbabilities exact_pointer_probabilities_oracle(const StateVector& psi,
                                                        int site,
                                                        CouplingAngle theta,
                                                        int momentum) {
  const int d = psi.dim();
  require_site(d, site);
  require_momentum(d, momentum);

  const Matrix u = coupling_unitary(d, site, theta);
  Vector composite = Vector::Zero(2 * d);
  for (int x = 0; x < d; ++x) {
    composite[2 * x] = psi.amplitudes()[x];  // pointer starts in |0>
  }
  composite = u * composite;

  Vector momentum_state(d);
  for (int x = 0; x < d; ++x) {
    momentum_state[x] =
        std::polar(1.0 / std::sqrt(double(d)),
                   2.0 * std::numbers::pi * momentum * x / d);
  }

  PointerProbabilities p;
  for (PointerOutcome j : kAllOutcomes) {
    const OutcomeVector e = outcome_vector(j);
    // Build the *ket* |p> x |e_j>; alpha/beta are bra components, so the
    // ket coefficients are their conjugates (proj.dot conjugates them back).
    Vector proj(2 * d);
    for (int x = 0; x < d; ++x) {
      proj[2 * x] = momentum_state[x] * std::conj(e.alpha);
      proj[2 * x + 1] = momentum_state[x] * std::conj(e.beta);
    }
    const double prob = std::norm(proj.dot(composite));
    switch (j) {
      case PointerOutcome::kZero:
        p.p0 = prob;
        break;
      case PointerOutcome::kOne:
        p.p1 = prob;
        break;
      case PointerOutcome::kPlus:
        p.p_plus = prob;
        break;
      case PointerOutcome::kMinus:
        p.p_minus = prob;
        break;
      case PointerOutcome::kLeft:
        p.p_left = prob;
        break;
      case PointerOutcome::kRight:
        p.p_right = prob;
        break;
    }
  }
  p.site = site;
  p.momentum = momentum;
  p.theta = theta.theta();
  return p;
}

Matrix povm_element(int d, int site, CouplingAngle theta, PointerOutcome j) {
  if (d < 2) {
    throw std::invalid_argument("povm_element requires d >= 2");
  }
  require_site(d, site);
  const OutcomeVector e = outcome_vector(j);
  const double sqrt_d = std::sqrt(double(d));
  const Complex gamma =
      ((1.0 - theta.cos_theta()) * e.alpha - theta.sin_theta() * e.beta) /
      sqrt_d;
  Matrix m = Matrix::Constant(d, d, e.alpha / double(d));
  for (int i = 0; i < d; ++i) {
    m(i, site) -= gamma / sqrt_d;
  }
  return m;
}

PointerProbabilities PointerDensity::probabilities() const {
  const double half_trace = 0.5 * m.trace().real();
  const Complex r10 = m(1, 0);
  PointerProbabilities p;
  p.p0 = m(0, 0).real();
  p.p1 = m(1, 1).real();
  p.p_plus = half_trace + r10.real();
  p.p_minus = half_trace - r10.real();
  p.p_left = half_trace + r10.imag();
  p.p_right = half_trace - r10.imag();
  p.site = site;
  p.momentum = momentum;
  p.theta = theta;
  return p;
}

PointerDensity pointer_density_mixed(const DensityMatrix& rho, int site,
                                     int momentum, CouplingAngle theta) {
  const int d = rho.dim();
  require_site(d, site);
  require_momentum(d, momentum);
  const Matrix& r = rho.entries();

  const double w = 2.0 * std::numbers::pi * momentum / d;
  // S = sum_y rho(site, y) exp(+i w (y - site)); F = d <p|rho|p>.
  Complex s_row(0, 0);
  Complex f(0, 0);
  for (int y = 0; y < d; ++y) {
    s_row += r(site, y) * std::polar(1.0, w * (y - site));
    for (int x = 0; x < d; ++x) {
      f += r(x, y) * std::polar(1.0, w * (y - x));
    }
  }
  const double rho_xx = r(site, site).real();
  const double eps = theta.epsilon();
  const double st = theta.sin_theta();

  PointerDensity pd;
  pd.m(0, 0) = Complex(
      (f.real() - 2.0 * eps * s_row.real() + eps * eps * rho_xx) / d, 0.0);
  pd.m(1, 0) = st * (s_row - eps * rho_xx) / double(d);
  pd.m(0, 1) = std::conj(pd.m(1, 0));
  pd.m(1, 1) = Complex(st * st * rho_xx / d, 0.0);
  pd.site = site;
  pd.momentum = momentum;
  pd.theta = theta.theta();
  return pd;
}

}  // namespace dirtomo
