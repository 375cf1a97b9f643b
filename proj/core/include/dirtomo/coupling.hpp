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

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dirtomo {

/// Pointer-coupling angle theta in (0, pi/2].
///
/// theta -> 0 is the weak-coupling limit, theta = pi/2 couples maximally.
/// epsilon() = 2 sin^2(theta/2) = 1 - cos(theta) is the back-action
/// strength; it appears in every closed form alongside sin(theta).
class CouplingAngle {
 public:
  explicit CouplingAngle(double theta) : theta_(theta) {
    if (!(theta > 0.0) || theta > std::numbers::pi / 2) {
      throw std::invalid_argument("coupling angle must lie in (0, pi/2]");
    }
  }

  double theta() const { return theta_; }
  double sin_theta() const { return std::sin(theta_); }
  double cos_theta() const { return std::cos(theta_); }
  double tan_half() const { return std::tan(theta_ / 2); }

  /// Back-action strength 2 sin^2(theta/2); in (0, 1].
  /// Evaluated as 2 sin^2 rather than 1 - cos to stay accurate at small theta.
  double epsilon() const {
    const double s = std::sin(theta_ / 2);
    return 2.0 * s * s;
  }

  static CouplingAngle strong() { return CouplingAngle(std::numbers::pi / 2); }

 private:
  double theta_;
};

}  // namespace dirtomo
