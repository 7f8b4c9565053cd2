// Copyright 2026 The hessian-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hessian_lab/error.hpp"

namespace hessian_lab {

inline double factorial(int k) { return std::tgamma(static_cast<double>(k) + 1.0); }

/// Dimensions (n, m) of the m-Hessian problem on the unit ball of C^n,
/// together with the Orlicz exponent alpha and the estimate parameter eps.
struct HessianParams {
  int n = 2;
  int m = 1;
  double eps = 0.1;
  double alpha = 5.0;

  /// 1 <= m <= n and n >= 2.
  void validate() const {
    if (n < 2) throw DomainError("HessianParams: n must be >= 2");
    if (m < 1 || m > n) throw DomainError("HessianParams: need 1 <= m <= n");
  }

  /// Range of eps admitted by the volume-capacity estimate.
  [[nodiscard]] double eps_max_volume_capacity() const {
    return (n + 1.0) / (3.0 * n);
  }

  void validate_for_volume_capacity() const {
    validate();
    if (!(eps > 0.0) || eps > eps_max_volume_capacity())
      throw DomainError("HessianParams: need 0 < eps <= (n+1)/(3n)");
  }

  /// gamma = (1 + eps) m - alpha m / n.
  [[nodiscard]] double gamma() const { return (1.0 + eps) * m - alpha * m / n; }

  /// Constraints of the stability estimate: 0 < eps < min((n+1)/(3n),
  /// alpha/n - 2), which forces gamma/m < -1.
  void validate_for_stability() const {
    validate();
    if (!(alpha > 0.0)) throw DomainError("HessianParams: alpha must be > 0");
    const double eps_max = std::min(eps_max_volume_capacity(), alpha / n - 2.0);
    if (!(gamma() / m < -1.0))
      throw ConditionError("HessianParams: gamma/m = " + std::to_string(gamma() / m) +
                           " is not < -1 (need alpha > (2+eps) n)");
    if (!(eps > 0.0) || !(eps < eps_max))
      throw ConditionError("HessianParams: need 0 < eps < min((n+1)/(3n), alpha/n - 2)");
  }

  /// Exponent c = 2n/m - 2 of the radial fundamental profile rho^{-c}.
  [[nodiscard]] double profile_exponent() const { return 2.0 * n / m - 2.0; }

  /// Normalisation 1 / (2^{2n-m-1} (n-1)!) of the radial mass function F.
  [[nodiscard]] double mass_normalisation() const {
    return 1.0 / (std::ldexp(1.0, 2 * n - m - 1) * factorial(n - 1));
  }

  /// Lebesgue volume pi^n / n! of the unit ball in C^n.
  [[nodiscard]] double ball_volume() const {
    return std::pow(std::numbers::pi, n) / factorial(n);
  }

  /// Factor 2 pi^n / (n-1)! turning int_0^1 g(rho) rho^{2n-1} drho into a
  /// ball integral.
  [[nodiscard]] double sphere_factor() const {
    return 2.0 * std::pow(std::numbers::pi, n) / factorial(n - 1);
  }

  /// Volume of the ball of radius r.
  [[nodiscard]] double ball_volume(double r) const {
    return ball_volume() * std::pow(r, 2 * n);
  }

  [[nodiscard]] HessianParams with_m(int new_m) const {
    HessianParams p = *this;
    p.m = new_m;
    return p;
  }
};

}  // namespace hessian_lab
