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

/**
 * \file special_fn.hpp
 * \brief Principal branch of the Lambert W function and the power-log
 * profiles whose inverses it expresses in closed form.
 */

#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "hessian_lab/error.hpp"
#include "hessian_lab/numerics.hpp"
#include "hessian_lab/params.hpp"

namespace hessian_lab {

namespace detail {

inline double lambert_residual(double w, double x) { return w * std::exp(w) - x; }

inline bool lambert_residual_ok(double w, double x) {
  return std::abs(lambert_residual(w, x)) <= 1e-12 * std::max(1.0, x);
}

}  // namespace detail

/**
 * \brief W0(x) for x >= 0: the unique w >= 0 with w exp(w) = x.
 *
 * Halley iteration seeded below the bound W0(x) <= max(1, log x); when the
 * residual |w e^w - x| <= 1e-12 max(1, x) is not met the answer is produced
 * by bisection on [0, max(1, log x)].
 */
inline double lambert_w0(double x) {
  if (std::isnan(x) || x < 0.0) throw DomainError("lambert_w0: argument must be >= 0");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return x;

  const double upper = std::max(1.0, std::log(x));
  double w;
  if (x < std::numbers::e) {
    const double l = std::log1p(x);
    w = l * (1.0 - std::log1p(l) / (2.0 + l));
  } else {
    const double l1 = std::log(x), l2 = std::log(l1);
    w = l1 - l2 + l2 / l1;
  }
  w = std::min(w, upper);

  for (int it = 0; it < 50; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    const double next = w - step;
    if (!std::isfinite(next)) break;
    w = std::clamp(next, 0.0, upper);
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, w)) break;
  }
  if (detail::lambert_residual_ok(w, x)) return w;

  return numerics::bisect_increasing([x](double v) { return detail::lambert_residual(v, x); },
                                     0.0, upper, 0.0, 0.0);
}

/// W0(exp(log_x)), valid for log arguments far beyond the double range.
inline double lambert_w0_log(double log_x) {
  if (std::isnan(log_x)) throw DomainError("lambert_w0_log: NaN argument");
  if (log_x < 700.0) return lambert_w0(std::exp(log_x));
  // w + log w = log_x
  double w = log_x - std::log(log_x);
  for (int it = 0; it < 60; ++it) {
    const double g = w + std::log(w) - log_x;
    const double step = g / (1.0 + 1.0 / w);
    w -= step;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * w) break;
  }
  return w;
}

/// Margins of the elementary W0 bounds at one point. The log x pairs are
/// only asserted for x >= e and are NaN below.
struct LambertBoundsRow {
  double x = 0.0;
  double w = 0.0;
  double residual = 0.0;
  double estl_margin = 0.0;     ///< max(1, log x) - w
  double log_lower = 0.0;       ///< w - log(x) / 2
  double log_upper = 0.0;       ///< log x - w
  double loglog_lower = 0.0;    ///< w - (log x - log log x)
  double loglog_upper = 0.0;    ///< log x - log(log x) / 2 - w
  bool pass = false;
};

inline LambertBoundsRow lambert_bounds_row(double x) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  LambertBoundsRow r;
  r.x = x;
  r.w = lambert_w0(x);
  r.residual = std::abs(detail::lambert_residual(r.w, x));
  const double lx = std::log(x);
  r.estl_margin = std::max(1.0, lx) - r.w;
  const double slack = 1e-12 * std::max(1.0, std::abs(lx));
  bool ok = r.residual <= 1e-12 * std::max(1.0, x) && r.w >= 0.0 && r.estl_margin >= -slack;
  if (x >= std::numbers::e) {
    const double llx = std::log(lx);
    r.log_lower = r.w - 0.5 * lx;
    r.log_upper = lx - r.w;
    r.loglog_lower = r.w - (lx - llx);
    r.loglog_upper = lx - 0.5 * llx - r.w;
    ok = ok && r.log_lower >= -slack && r.log_upper >= -slack && r.loglog_lower >= -slack && r.loglog_upper >= -slack;
  } else {
    r.log_lower = r.log_upper = r.loglog_lower = r.loglog_upper = nan;
  }
  r.pass = ok;
  return r;
}

/// Log-uniform sweep of [x_min, x_max].
inline std::vector<LambertBoundsRow> lambert_bounds_sweep(double x_min, double x_max, int points) {
  if (!(x_min > 0.0) || !(x_max >= x_min) || points < 1) throw DomainError("lambert_bounds_sweep: empty range");
  std::vector<LambertBoundsRow> rows;
  rows.reserve(static_cast<std::size_t>(points));
  const double a = std::log(x_min), b = std::log(x_max);
  for (int i = 0; i < points; ++i)
    rows.push_back(lambert_bounds_row(points == 1 ? x_min : std::exp(a + (b - a) * i / (points - 1))));
  return rows;
}

/// Profile G_{p,q}(t) = t^q (-log t)^p on (0, 1).
struct PowerLogProfile {
  double p = -1.0;  ///< exponent on (-log t)
  double q = 1.0;   ///< exponent on t, q > 0

  void validate_for_inverse() const {
    if (!(q > 0.0)) throw DomainError("PowerLogProfile: q must be > 0");
    if (!(p < 0.0)) throw DomainError("PowerLogProfile: inversion needs p < 0");
  }
};

/// t^q (-log t)^p for t in (0, 1), evaluated in log space.
inline double g_pq_eval(double t, const PowerLogProfile& prof) {
  if (!(t > 0.0) || !(t < 1.0)) throw DomainError("g_pq_eval: t must lie in (0, 1)");
  if (!(prof.q > 0.0)) throw DomainError("g_pq_eval: q must be > 0");
  const double lt = std::log(t);
  return std::exp(prof.q * lt + prof.p * std::log(-lt));
}

/// G_{p,q}(e^{-depth}); exact for depths where t itself would round to 1.
inline double g_pq_eval_log(double depth, const PowerLogProfile& prof) {
  if (!(depth > 0.0) || !std::isfinite(depth)) throw DomainError("g_pq_eval_log: depth must lie in (0, inf)");
  if (!(prof.q > 0.0)) throw DomainError("g_pq_eval_log: q must be > 0");
  return std::exp(-prof.q * depth + prof.p * std::log(depth));
}

/// Returns L = -log t with G_{p,q}(t) = s, via the Lambert closed form
/// t = exp((p/q) W0(-(q/p) s^{1/p})) polished by Newton steps on L.
inline double g_pq_inverse_log(double s, const PowerLogProfile& prof) {
  prof.validate_for_inverse();
  if (!(s > 0.0) || !std::isfinite(s)) throw RangeError("g_pq_inverse: s must lie in (0, inf)");
  const double p = prof.p, q = prof.q;
  const double log_x = std::log(-q / p) + std::log(s) / p;
  double depth = -p * lambert_w0_log(log_x) / q;
  // -q L + p log L = log s, strictly decreasing in L
  const double ls = std::log(s);
  for (int it = 0; it < 3; ++it) {
    const double r = -q * depth + p * std::log(depth) - ls;
    const double dr = -q + p / depth;
    const double next = depth - r / dr;
    if (!(next > 0.0) || !std::isfinite(next)) break;
    depth = next;
  }
  return depth;
}

/// Inverse of G_{p,q} on (0, 1) for p < 0 < q; the range of G_{p,q} is (0, inf).
inline double g_pq_inverse(double s, const PowerLogProfile& prof) {
  return std::exp(-g_pq_inverse_log(s, prof));
}

/// Auxiliary functions of the volume-capacity argument for fixed n and eps.
struct ProofProfiles {
  int n = 2;
  double eps = 0.25;

  void validate() const {
    if (n < 2) throw DomainError("ProofProfiles: n must be >= 2");
    if (!(eps > 0.0) || eps > (n + 1.0) / (3.0 * n))
      throw DomainError("ProofProfiles: need 0 < eps <= (n+1)/(3n)");
  }

  [[nodiscard]] double power() const { return n * (1.0 + eps); }

  /// F(t) = t^{-1} (-log t)^{-n-n eps} on (0, 1).
  [[nodiscard]] double f(double t) const {
    if (!(t > 0.0) || !(t < 1.0)) throw DomainError("F: t must lie in (0, 1)");
    const double lt = std::log(t);
    return std::exp(-lt - power() * std::log(-lt));
  }

  /// log Phi(t) = 2n(1-eps)(t+1)^{1/(n+n eps)}.
  [[nodiscard]] double log_phi(double t) const {
    if (!(t >= 0.0)) throw DomainError("Phi: t must be >= 0");
    return 2.0 * n * (1.0 - eps) * std::pow(t + 1.0, 1.0 / power());
  }

  [[nodiscard]] double phi(double t) const { return std::exp(log_phi(t)); }

  /// Phi^{-1}(y) given log y; requires y >= Phi(0).
  [[nodiscard]] double phi_inverse_from_log(double log_y) const {
    const double base = log_y / (2.0 * n * (1.0 - eps));
    if (!(base >= 1.0 - 1e-15)) throw DomainError("Phi^{-1}: argument below Phi(0)");
    return std::pow(std::max(base, 1.0), power()) - 1.0;
  }

  /// Upper bound F(V) V Phi^{-1}(1/V) <= 1 / (2n(1-eps))^{n+n eps}.
  [[nodiscard]] double orlicz_product_bound() const {
    return std::pow(2.0 * n * (1.0 - eps), -power());
  }
};

/// G_{alpha,n/m}(t) = (1+t)^{n/m} (log(1+t))^alpha for t >= 0.
inline double g_alpha_nm(double t, const HessianParams& params) {
  if (!(t >= 0.0)) throw DomainError("G_alpha_nm: t must be >= 0");
  if (t == 0.0) return 0.0;
  const double y = std::log1p(t);
  return std::exp(static_cast<double>(params.n) / params.m * y + params.alpha * std::log(y));
}

/// Derivative of G_{alpha,n/m}.
inline double g_alpha_nm_derivative(double t, const HessianParams& params) {
  if (!(t >= 0.0)) throw DomainError("G_alpha_nm': t must be >= 0");
  const double r = static_cast<double>(params.n) / params.m;
  if (t == 0.0) return params.alpha < 1.0 ? numerics::kInf : (params.alpha == 1.0 ? 1.0 : 0.0);
  const double y = std::log1p(t);
  return std::exp((r - 1.0) * y + (params.alpha - 1.0) * std::log(y)) * (r * y + params.alpha);
}

/// Inverse of G_{alpha,n/m} through W0((n/(alpha m)) s^{1/alpha}), polished by
/// Newton steps on y = log(1+t).
inline double g_alpha_nm_inverse(double s, const HessianParams& params) {
  if (!(s >= 0.0)) throw DomainError("G_alpha_nm^{-1}: s must be >= 0");
  if (s == 0.0) return 0.0;
  if (std::isinf(s)) return s;
  const double r = static_cast<double>(params.n) / params.m;
  const double a = params.alpha;
  const double log_x = std::log(r / a) + std::log(s) / a;
  double y = a * lambert_w0_log(log_x) / r;
  const double ls = std::log(s);
  for (int it = 0; it < 3; ++it) {
    const double res = r * y + a * std::log(y) - ls;
    const double next = y - res / (r + a / y);
    if (!(next > 0.0) || !std::isfinite(next)) break;
    y = next;
  }
  return std::expm1(y);
}

enum class ProfileKind { kF, kPhi, kGAlphaNm, kGAlphaNmInverse };

/// Dispatches to the profile functions; F and Phi use (n, eps), the G pair
/// uses (n, m, alpha).
inline double profile_eval(ProfileKind kind, double t, const HessianParams& params) {
  switch (kind) {
    case ProfileKind::kF:
      return ProofProfiles{params.n, params.eps}.f(t);
    case ProfileKind::kPhi:
      return ProofProfiles{params.n, params.eps}.phi(t);
    case ProfileKind::kGAlphaNm:
      return g_alpha_nm(t, params);
    case ProfileKind::kGAlphaNmInverse:
      return g_alpha_nm_inverse(t, params);
  }
  throw DomainError("profile_eval: unknown profile");
}

}  // namespace hessian_lab
