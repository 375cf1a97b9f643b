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

#include "dirtomo/reconstruction.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dirtomo/analysis.hpp"
#include "dirtomo/errors.hpp"

namespace dirtomo {

namespace {

/// Normalizer below 1e-9 * d means every coefficient is noise-level zero:
/// nothing to reconstruct.
constexpr double kDegenerateScale = 1e-9;

void validate_prob_table(std::span<const PointerProbabilities> probs,
                         double theta) {
  if (probs.size() < 2) {
    throw std::invalid_argument("need probabilities for at least two sites");
  }
  for (size_t x = 0; x < probs.size(); ++x) {
    if (probs[x].site != static_cast<int>(x)) {
      throw std::invalid_argument("probability table must be in site order");
    }
    if (std::abs(probs[x].theta - theta) > 1e-9) {
      throw std::invalid_argument(
          "probability table mixes coupling angles");
    }
  }
}

ReconstructionResult estimate_from_quadratures(const Eigen::VectorXd& a,
                                               const Eigen::VectorXd& b,
                                               double sum_x_asymmetry,
                                               Method method,
                                               CouplingAngle theta) {
  const int d = static_cast<int>(a.size());
  const double m = std::sqrt(a.squaredNorm() + b.squaredNorm());
  if (m < kDegenerateScale * d) {
    throw DegenerateInputError(
        "reconstruction coefficients vanish; the state post-selects to "
        "nothing at this momentum");
  }
  Vector amps(d);
  for (int x = 0; x < d; ++x) {
    amps[x] = Complex(a[x], b[x]) / m;
  }
  ReconstructionResult r{StateVector::normalized(std::move(amps)), method,
                         theta.theta(), a.sum() / m,
                         sum_x_asymmetry >= 0.0, std::nullopt};
  if (method == Method::kWeak) {
    r.bound_value = dwt_error_bound(theta);
  }
  return r;
}

}  // namespace

std::string_view to_label(Method method) {
  switch (method) {
    case Method::kWeak:
      return "dwt";
    case Method::kStrong:
      return "dst";
    case Method::kArbitrary:
      return "arbitrary";
    case Method::kMixedWeak:
      return "mixed-dwt";
    case Method::kMixedStrong:
      return "mixed-dst";
  }
  throw std::invalid_argument("unknown method");
}

Method method_from_label(std::string_view label) {
  if (label == "dwt") return Method::kWeak;
  if (label == "dst") return Method::kStrong;
  if (label == "arbitrary") return Method::kArbitrary;
  if (label == "mixed-dwt") return Method::kMixedWeak;
  if (label == "mixed-dst") return Method::kMixedStrong;
  throw std::invalid_argument("unknown method label");
}

ReconstructionResult dwt_estimate(std::span<const PointerProbabilities> probs,
                                  CouplingAngle theta) {
  validate_prob_table(probs, theta.theta());
  const int d = static_cast<int>(probs.size());
  Eigen::VectorXd a(d), b(d);
  for (int x = 0; x < d; ++x) {
    a[x] = probs[x].p_plus - probs[x].p_minus;
    b[x] = probs[x].p_left - probs[x].p_right;
  }
  return estimate_from_quadratures(a, b, a.sum(), Method::kWeak, theta);
}

ReconstructionResult arbitrary_theta_estimate(
    std::span<const PointerProbabilities> probs, CouplingAngle theta) {
  validate_prob_table(probs, theta.theta());
  const int d = static_cast<int>(probs.size());
  const double corr = 2.0 * theta.tan_half();
  Eigen::VectorXd a(d), b(d);
  double x_asymmetry = 0.0;
  for (int x = 0; x < d; ++x) {
    // The tan(theta/2) P_1 term cancels the quadratic back-action exactly,
    // at every theta; the weak estimator is this with the term dropped.
    a[x] = probs[x].p_plus - probs[x].p_minus + corr * probs[x].p1;
    b[x] = probs[x].p_left - probs[x].p_right;
    x_asymmetry += probs[x].p_plus - probs[x].p_minus;
  }
  return estimate_from_quadratures(a, b, x_asymmetry, Method::kArbitrary,
                                   theta);
}

ReconstructionResult dst_estimate(
    std::span<const PointerProbabilities> probs) {
  ReconstructionResult r =
      arbitrary_theta_estimate(probs, CouplingAngle::strong());
  r.method = Method::kStrong;
  return r;
}

PointerMoment pointer_tomography(const PointerProbabilities& probs) {
  PointerMoment m;
  m.rho10 = 0.5 * Complex(probs.p_plus - probs.p_minus,
                          probs.p_left - probs.p_right);
  m.rho11 = probs.p1;
  return m;
}

PointerTomogram exact_tomogram(const DensityMatrix& rho, CouplingAngle theta) {
  const int d = rho.dim();
  PointerTomogram t;
  t.rho10.resize(d, d);
  t.rho11.resize(d, d);
  for (int x = 0; x < d; ++x) {
    for (int p = 0; p < d; ++p) {
      const PointerDensity pd = pointer_density_mixed(rho, x, p, theta);
      t.rho10(x, p) = pd.m(1, 0);
      t.rho11(x, p) = pd.m(1, 1).real();
    }
  }
  return t;
}

PointerTomogram
tomogram_from_probabilities(std::span<const PointerProbabilities> probs,
                            int d) {
  if (d < 2) {
    throw std::invalid_argument("tomogram requires d >= 2");
  }
  if (probs.size() != static_cast<size_t>(d) * static_cast<size_t>(d)) {
    throw std::invalid_argument(
        "tomogram needs the full site x momentum probability grid");
  }
  PointerTomogram t;
  t.rho10 = Matrix::Zero(d, d);
  t.rho11 = Eigen::MatrixXd::Zero(d, d);
  Eigen::MatrixXi seen = Eigen::MatrixXi::Zero(d, d);
  for (const PointerProbabilities& pr : probs) {
    if (pr.site < 0 || pr.site >= d || pr.momentum < 0 || pr.momentum >= d) {
      throw std::invalid_argument("tomogram entry outside the (site, momentum) grid");
    }
    const PointerMoment m = pointer_tomography(pr);
    t.rho10(pr.site, pr.momentum) = m.rho10;
    t.rho11(pr.site, pr.momentum) = m.rho11;
    seen(pr.site, pr.momentum) += 1;
  }
  if ((seen.array() != 1).any()) {
    throw std::invalid_argument("tomogram grid incomplete or duplicated");
  }
  return t;
}

namespace {

void validate_tomogram(const PointerTomogram& t) {
  if (t.rho10.rows() < 2 || t.rho10.rows() != t.rho10.cols()) {
    throw std::invalid_argument("tomogram rho10 table must be square, d >= 2");
  }
  if (t.rho11.rows() != t.rho10.rows() || t.rho11.cols() != t.rho10.cols()) {
    throw std::invalid_argument("tomogram rho11 table must match rho10");
  }
}

/// sum_p exp(2 pi i (x - y) p / d) rho10(x, p); equals
/// sin(theta) * (rho - eps * diag(rho)) on exact inputs.
Matrix inverse_momentum_sum(const Matrix& rho10) {
  const int d = static_cast<int>(rho10.rows());
  Matrix g(d, d);
  for (int x = 0; x < d; ++x) {
    for (int y = 0; y < d; ++y) {
      Complex acc(0, 0);
      for (int p = 0; p < d; ++p) {
        acc += std::polar(1.0, 2.0 * std::numbers::pi * (x - y) * p / d) *
               rho10(x, p);
      }
      g(x, y) = acc;
    }
  }
  return g;
}

ReconstructionResult density_from_table(Matrix g, Method method,
                                        CouplingAngle theta) {
  Matrix h = ((g + g.adjoint()) / 2.0).eval();
  const double tr = h.trace().real();
  if (std::abs(tr) < 1e-9) {
    throw DegenerateInputError(
        "reconstructed table is traceless; the weak density estimator is "
        "undefined at theta = pi/2");
  }
  h /= tr;
  return ReconstructionResult{DensityMatrix::estimate(std::move(h)), method,
                              theta.theta(), 0.0, true, std::nullopt};
}

}  // namespace

ReconstructionResult mixed_dwt_estimate(const PointerTomogram& tomogram,
                                        CouplingAngle theta) {
  validate_tomogram(tomogram);
  return density_from_table(inverse_momentum_sum(tomogram.rho10),
                            Method::kMixedWeak, theta);
}

ReconstructionResult mixed_dst_estimate(const PointerTomogram& tomogram,
                                        CouplingAngle theta) {
  validate_tomogram(tomogram);
  const int d = tomogram.dim();
  Matrix g = inverse_momentum_sum(tomogram.rho10);
  const double corr = double(d) * theta.tan_half();
  for (int x = 0; x < d; ++x) {
    // rho11 is momentum-independent in exact data; average over the grid.
    g(x, x) += corr * tomogram.rho11.row(x).mean();
  }
  return density_from_table(std::move(g), Method::kMixedStrong, theta);
}

}  // namespace dirtomo
