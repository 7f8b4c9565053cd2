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
 * \file capacity.hpp
 * \brief m-Hessian capacities of balls, capacity profiles of sublevel sets
 * and the volume-capacity estimate on ball families.
 *
 * The relative extremal function of B(0, r) in the unit ball is radial:
 * u = max(-1, (rho^{-c} - 1) / (1 - r^{-c})) with c = 2n/m - 2 for m < n,
 * and u = max(-1, log rho / (-log r)) for m = n. Its Hessian measure lives on
 * the sphere |z| = r and has total mass
 *
 *     cap_m(B_r) = 2^{2n-m} pi^n (c / (r^{-c} - 1))^m     (m < n)
 *     cap_n(B_r) = (2 pi)^n (-log r)^{-n}                 (m = n).
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "hessian_lab/error.hpp"
#include "hessian_lab/numerics.hpp"
#include "hessian_lab/params.hpp"
#include "hessian_lab/radial.hpp"
#include "hessian_lab/radial_hessian.hpp"
#include "hessian_lab/special_fn.hpp"
#include "hessian_lab/verification.hpp"

namespace hessian_lab {

/// Relative extremal function of B(0, r), sampled with exact slopes on
/// `grid`; the kink at rho = r is a node pair (slope 0 on the left).
inline RadialFunction extremal_profile(double r, const HessianParams& params,
                                       const RadialGrid& grid = RadialGrid::graded()) {
  params.validate();
  if (!(r > 0.0) || !(r < 1.0)) throw DomainError("extremal_profile: r must lie in (0, 1)");
  const double after = r * (1.0 + 1e-12);
  const auto g = grid.with_nodes({r, after});
  const int n = params.n, m = params.m;
  std::vector<double> rr(g.radii().begin(), g.radii().end()), v(rr.size()), d(rr.size());
  if (m < n) {
    const double c = params.profile_exponent();
    const double denom = std::expm1(-c * std::log(r));  // r^{-c} - 1
    for (std::size_t i = 0; i < rr.size(); ++i) {
      const double x = rr[i];
      if (x <= r) {
        v[i] = -1.0;
        d[i] = 0.0;
      } else {
        v[i] = std::max(-1.0, -std::expm1(-c * std::log(x)) / denom);
        d[i] = c * std::exp((-c - 1.0) * std::log(x)) / denom;
      }
    }
  } else {
    const double L = -std::log(r);
    for (std::size_t i = 0; i < rr.size(); ++i) {
      const double x = rr[i];
      if (x <= r) {
        v[i] = -1.0;
        d[i] = 0.0;
      } else {
        v[i] = std::max(-1.0, std::log(x) / L);
        d[i] = 1.0 / (x * L);
      }
    }
  }
  v.back() = 0.0;
  return RadialFunction(std::move(rr), std::move(v), RadialKind::kPotential, std::move(d));
}

/// cap_m(B(0, r)) relative to the unit ball.
inline double ball_capacity(double r, const HessianParams& params) {
  params.validate();
  if (!(r > 0.0) || !(r < 1.0)) throw DomainError("ball_capacity: r must lie in (0, 1)");
  const int n = params.n, m = params.m;
  double cap;
  if (m < n) {
    const double c = params.profile_exponent();
    const double denom = std::expm1(-c * std::log(r));
    cap = std::ldexp(1.0, 2 * n - m) * std::pow(std::numbers::pi, n) * std::pow(c / denom, m);
  } else {
    cap = std::pow(2.0 * std::numbers::pi, n) * std::pow(-std::log(r), -n);
  }
  if (!std::isfinite(cap) || !(cap > 0.0)) throw RangeError("ball_capacity: value overflows near r = 1");
  return cap;
}

/// s -> cap_m({u < -s})^{1/m} together with the sampled sublevel geometry.
class CapacityProfile {
 public:
  /// Profile of a radial potential; h(s) for any s is recomputed from u.
  static CapacityProfile from_potential(const RadialFunction& u, std::vector<double> s_grid,
                                        const HessianParams& params) {
    if (u.kind() != RadialKind::kPotential) throw DomainError("CapacityProfile: expects a potential");
    check_grid(s_grid);
    auto src = std::make_shared<const RadialFunction>(u);
    CapacityProfile p;
    p.source_ = src;
    p.params_ = params;
    p.eval_ = [src, params](double s) { return sublevel_h(*src, s, params).h; };
    for (double s : s_grid) {
      const auto row = sublevel_h(*src, s, params);
      p.radii_.push_back(row.radius);
      p.volumes_.push_back(params.ball_volume(row.radius));
      p.h_.push_back(row.h);
    }
    p.s_ = std::move(s_grid);
    p.sup_ = -u.values().front();
    return p;
  }

  /// Synthetic profile from a nonincreasing function of s.
  static CapacityProfile from_function(std::function<double(double)> h, std::vector<double> s_grid) {
    check_grid(s_grid);
    CapacityProfile p;
    p.eval_ = std::move(h);
    for (double s : s_grid) p.h_.push_back(p.eval_(s));
    p.s_ = std::move(s_grid);
    return p;
  }

  [[nodiscard]] double operator()(double s) const { return s < 0.0 ? eval_(0.0) : eval_(s); }
  [[nodiscard]] std::span<const double> s_grid() const { return s_; }
  [[nodiscard]] std::span<const double> h_values() const { return h_; }
  [[nodiscard]] std::span<const double> radii() const { return radii_; }
  [[nodiscard]] std::span<const double> volumes() const { return volumes_; }
  [[nodiscard]] const RadialFunction* source() const { return source_.get(); }
  /// -u(0) of the source potential, if any.
  [[nodiscard]] std::optional<double> source_sup() const {
    return source_ ? std::optional<double>(sup_) : std::nullopt;
  }

  /// Sampled check that h is nonincreasing on the grid.
  [[nodiscard]] bool nonincreasing() const {
    for (std::size_t i = 1; i < h_.size(); ++i)
      if (h_[i] > h_[i - 1] * (1.0 + 1e-12)) return false;
    return true;
  }

 private:
  struct Row {
    double radius;
    double h;
  };

  static void check_grid(const std::vector<double>& s) {
    if (s.empty()) throw DomainError("CapacityProfile: empty s grid");
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (!(s[i] >= 0.0)) throw DomainError("CapacityProfile: s values must be >= 0");
      if (i > 0 && !(s[i] > s[i - 1])) throw DomainError("CapacityProfile: s grid must increase");
    }
  }

  static Row sublevel_h(const RadialFunction& u, double s, const HessianParams& params) {
    if (s <= 0.0) throw BoundaryTouchingError("CapacityProfile: the sublevel set at s = 0 is the whole ball");
    const auto g = sublevel_geometry(u, s, params);
    if (g.radius >= 1.0 - 1e-6) throw BoundaryTouchingError("CapacityProfile: sublevel set reaches the boundary");
    if (g.radius <= 0.0) return {0.0, 0.0};
    return {g.radius, std::pow(ball_capacity(g.radius, params), 1.0 / params.m)};
  }

  std::function<double(double)> eval_;
  std::shared_ptr<const RadialFunction> source_;
  HessianParams params_{};
  std::vector<double> s_, h_, radii_, volumes_;
  double sup_ = 0.0;
};

inline CapacityProfile sublevel_capacity_profile(const RadialFunction& u, std::vector<double> s_grid,
                                                 const HessianParams& params) {
  return CapacityProfile::from_potential(u, std::move(s_grid), params);
}

/// One ball of a volume-capacity sweep.
struct DKRow {
  double r = 0.0;
  double volume = 0.0;
  double capacity = 0.0;
  double dk_rhs = 0.0;
  double corollary_rhs = 0.0;
  double margin = 0.0;  ///< min(dk_rhs, corollary_rhs) - volume
};

struct DKReport {
  HessianParams params;
  std::vector<DKRow> rows;
  double C1 = 0.0, C2 = 0.0, D1 = 0.0, D2 = 0.0;
  double exponent = 0.0;     ///< nm(1+eps)/(n-m)
  double slope = 0.0;        ///< log V against log cap over rows with r <= slope_r_max
  double slope_full = 0.0;   ///< same over every row
  double slope_r_max = 0.1;
  double expected_slope = 0.0;
  std::size_t skipped_rows = 0;  ///< rows with cap below 1e-14

  [[nodiscard]] bool all_rows_hold() const {
    return std::all_of(rows.begin(), rows.end(), [](const DKRow& r) { return r.margin >= 0.0; });
  }
};

namespace detail {

/// log of cap^{n/(n-m)} W0(C2 cap^{-1/(m(1+eps))})^{e}.
inline double log_dk_shape(double log_cap, double log_c2, const HessianParams& p) {
  const double n = p.n, m = p.m;
  const double e = n * m * (1.0 + p.eps) / (n - m);
  const double w = lambert_w0_log(log_c2 - log_cap / (m * (1.0 + p.eps)));
  return n / (n - m) * log_cap + e * std::log(w);
}

inline double log_cor_shape(double log_cap, double d2, const HessianParams& p) {
  const double n = p.n, m = p.m;
  const double e = n * m * (1.0 + p.eps) / (n - m);
  return n / (n - m) * log_cap + e * std::log(std::max(1.0, 1.0 - d2 * log_cap));
}

}  // namespace detail

/// Sweeps balls with log-spaced radii in [r_min, r_max], fits C1 for each
/// C2 in {1e-3, ..., 1e3} as the smallest constant that makes the estimate
/// hold on every row, keeps the C2 with the smallest mean log gap, and
/// derives D1 = C1 max(1, log C2)^e and D2 = 1/(m(1+eps)) from
/// W0(x) <= max(1, log x).
inline DKReport dk_verify(const HessianParams& params, double r_min, double r_max, int steps,
                          double slope_r_max = 0.1) {
  params.validate_for_volume_capacity();
  if (params.m == params.n) throw DomainError("dk_verify: needs m < n");
  if (steps < 2 || !(r_min > 0.0) || !(r_min < r_max) || !(r_max < 1.0))
    throw DomainError("dk_verify: empty sweep");
  DKReport rep;
  rep.params = params;
  rep.slope_r_max = slope_r_max;
  const double n = params.n, m = params.m;
  rep.exponent = n * m * (1.0 + params.eps) / (n - m);
  rep.expected_slope = n / (n - m);

  std::vector<double> log_v, log_c;
  for (int i = 0; i < steps; ++i) {
    const double r = std::exp(std::log(r_min) + (std::log(r_max) - std::log(r_min)) * i / (steps - 1));
    DKRow row;
    row.r = r;
    row.volume = params.ball_volume(r);
    row.capacity = ball_capacity(r, params);
    if (row.capacity < 1e-14) {
      row.capacity = 0.0;
      ++rep.skipped_rows;
    }
    rep.rows.push_back(row);
  }
  for (const auto& row : rep.rows) {
    if (row.capacity == 0.0) continue;
    log_v.push_back(std::log(row.volume));
    log_c.push_back(std::log(row.capacity));
  }
  if (log_v.empty()) throw DomainError("dk_verify: every capacity underflows");

  double best_gap = numerics::kInf;
  for (int k = -3; k <= 3; ++k) {
    const double log_c2 = k * std::log(10.0);
    double log_c1 = -numerics::kInf;
    for (std::size_t i = 0; i < log_v.size(); ++i)
      log_c1 = std::max(log_c1, log_v[i] - detail::log_dk_shape(log_c[i], log_c2, params));
    const double c1 = std::exp(log_c1) * (1.0 + 1e-12);
    double gap = 0.0;
    for (std::size_t i = 0; i < log_v.size(); ++i)
      gap += std::log(c1) + detail::log_dk_shape(log_c[i], log_c2, params) - log_v[i];
    gap /= static_cast<double>(log_v.size());
    if (gap < best_gap) {
      best_gap = gap;
      rep.C1 = c1;
      rep.C2 = std::exp(log_c2);
    }
  }
  rep.D2 = 1.0 / (m * (1.0 + params.eps));
  rep.D1 = rep.C1 * std::pow(std::max(1.0, std::log(rep.C2)), rep.exponent);

  for (auto& row : rep.rows) {
    if (row.capacity == 0.0) {
      row.dk_rhs = row.corollary_rhs = 0.0;
      row.margin = -row.volume;
      continue;
    }
    const double lc = std::log(row.capacity);
    row.dk_rhs = rep.C1 * std::exp(detail::log_dk_shape(lc, std::log(rep.C2), params));
    row.corollary_rhs = rep.D1 * std::exp(detail::log_cor_shape(lc, rep.D2, params));
    row.margin = std::min(row.dk_rhs, row.corollary_rhs) - row.volume;
  }

  std::vector<double> sv, sc, fv, fc;
  for (const auto& row : rep.rows) {
    if (row.capacity == 0.0) continue;
    fv.push_back(row.volume);
    fc.push_back(row.capacity);
    if (row.r <= slope_r_max) {
      sv.push_back(row.volume);
      sc.push_back(row.capacity);
    }
  }
  rep.slope_full = numerics::loglog_slope(fc, fv);
  rep.slope = sv.size() >= 2 ? numerics::loglog_slope(sc, sv) : rep.slope_full;
  return rep;
}

/// Smallest d with V G^{-1}(1/V) <= d cap max(1, 1 - D2 log cap)^gamma on
/// every ball B(0, r), r in [r_lo, r_hi], where G = G_{alpha,n/m}; found on a
/// dense log grid and refined around the maximum.
inline double fit_measure_constant(const HessianParams& params, double d2, double r_lo = 1e-8,
                                   double r_hi = 1.0 - 1e-6, int samples = 4000) {
  params.validate();
  if (!(d2 > 0.0)) throw DomainError("fit_measure_constant: D2 must be > 0");
  const double gamma = params.gamma();
  auto log_ratio = [&](double log_r) {
    const double r = std::exp(log_r);
    const double v = params.ball_volume(r);
    const double cap = ball_capacity(r, params);
    const double lhs = std::log(v) + std::log(g_alpha_nm_inverse(1.0 / v, params));
    const double rhs = std::log(cap) + gamma * std::log(std::max(1.0, 1.0 - d2 * std::log(cap)));
    return lhs - rhs;
  };
  const double a = std::log(r_lo), b = std::log(r_hi);
  double best = -numerics::kInf;
  int best_i = 0;
  for (int i = 0; i <= samples; ++i) {
    const double v = log_ratio(a + (b - a) * i / samples);
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  const double lo = a + (b - a) * std::max(0, best_i - 1) / samples;
  const double hi = a + (b - a) * std::min(samples, best_i + 1) / samples;
  const auto [x, neg] = numerics::golden_section_minimize([&](double t) { return -log_ratio(t); }, lo, hi, 1e-14);
  (void)x;
  best = std::max(best, -neg);
  return std::exp(best) * (1.0 + 1e-9);
}

/// Volumes of {v <= -s} for the log pole v = log|z| / (2 pi), compared with
/// C_n (1+s)^{n-1} exp(-2ns), C_n = pi^n / n!, for s in [0, s_max].
inline VerificationRecord ackpz_decay_check(double s_max, const HessianParams& params, int points = 101) {
  params.validate();
  if (!(s_max >= 0.0)) throw DomainError("ackpz_decay_check: s_max must be >= 0");
  const int n = params.n;
  const double two_pi = 2.0 * std::numbers::pi;
  const double rho_min = std::min(1e-30, 0.5 * std::exp(-two_pi * s_max));
  std::vector<double> r;
  for (double x = rho_min; x < 1.0 / 1.02; x *= 1.02) r.push_back(x);
  r.push_back(1.0);
  std::vector<double> v(r.size()), d(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    v[i] = std::log(r[i]) / two_pi;
    d[i] = 1.0 / (two_pi * r[i]);
  }
  v.back() = 0.0;
  const RadialFunction pole(r, v, RadialKind::kPotential, d);

  VerificationRecord rec;
  rec.name = "ackpz_decay";
  rec.tolerance = 0.0;
  const double cn = params.ball_volume();
  std::vector<double> ss, log_vol;
  for (int i = 0; i < points; ++i) {
    const double s = points == 1 ? 0.0 : s_max * i / (points - 1);
    const double lhs = s == 0.0 ? params.ball_volume() : sublevel_geometry(pole, s, params).volume;
    const double rhs = cn * std::pow(1.0 + s, n - 1) * std::exp(-2.0 * n * s);
    rec.observe(rhs - lhs);
    if (s > 0.0 && lhs > 0.0) {
      ss.push_back(s);
      log_vol.push_back(-std::log(lhs / cn));
    }
  }
  // least-squares slope of -log(V / C_n) against s
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < ss.size(); ++i) {
    sx += ss[i];
    sy += log_vol[i];
    sxx += ss[i] * ss[i];
    sxy += ss[i] * log_vol[i];
  }
  const double k = static_cast<double>(ss.size());
  rec.details["measured_exponent"] = k >= 2 ? (k * sxy - sx * sy) / (k * sxx - sx * sx) : 0.0;
  rec.details["bound_exponent"] = 2.0 * n;
  rec.details["C_n"] = cn;
  return rec.finish();
}

}  // namespace hessian_lab
