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
 * \file numerics.hpp
 * \brief Root bracketing, one-dimensional minimisation and quadrature
 * primitives shared by every module.
 *
 * Adaptive quadrature on panels is delegated to Boost.Math
 * (Gauss-Kronrod and exp-sinh); fixed Gauss-Legendre rules on grid cells
 * and the bracketing solvers are local.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "hessian_lab/error.hpp"

namespace hessian_lab::numerics {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Gauss-Legendre rule on [-1, 1].
template <int N>
struct GaussRule {
  std::array<double, N> nodes{};
  std::array<double, N> weights{};
};

template <int N>
const GaussRule<N>& gauss_legendre() {
  static const GaussRule<N> rule = [] {
    GaussRule<N> r;
    for (int i = 0; i < N; ++i) {
      double x = std::cos(std::numbers::pi * (i + 0.75) / (N + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= N; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = N * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      r.nodes[i] = x;
      r.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
  }();
  return rule;
}

/// Integral of g over [a, b] with an N-point Gauss-Legendre rule.
template <int N = 8, class G>
double gauss_cell(G&& g, double a, double b) {
  const auto& rule = gauss_legendre<N>();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < N; ++i) sum += rule.weights[i] * g(mid + half * rule.nodes[i]);
  return sum * half;
}

/// Composite Gauss-Legendre integral over consecutive cells of `nodes`.
template <int N = 8, class G>
double gauss_composite(G&& g, std::span<const double> nodes) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) sum += gauss_cell<N>(g, nodes[i], nodes[i + 1]);
  return sum;
}

/// Bisection for an increasing function `g` on [lo, hi] with g(lo) <= 0 <= g(hi).
/// Stops when the bracket is below `rel_tol` relative (or `abs_tol`).
template <class G>
double bisect_increasing(G&& g, double lo, double hi, double rel_tol = 1e-15,
                         double abs_tol = 0.0, int max_iter = 400) {
  for (int it = 0; it < max_iter; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (g(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= std::max(abs_tol, rel_tol * std::abs(hi))) break;
  }
  return 0.5 * (lo + hi);
}

/// Solve g(t) = target for a continuous increasing g on [lower, inf), growing
/// the upper end of the bracket geometrically from `start`.
template <class G>
double invert_increasing(G&& g, double target, double lower = 0.0, double start = 1.0,
                         double rel_tol = 1e-15) {
  double hi = std::max(start, lower + 1e-300);
  int grow = 0;
  while (g(hi) < target) {
    hi *= 2.0;
    if (++grow > 2100 || !std::isfinite(hi)) throw RangeError("invert_increasing: target out of range");
  }
  double lo = lower;
  if (lower == 0.0 && hi > 0.0) {
    // shrink towards 0 geometrically so tiny roots keep relative accuracy
    double probe = hi;
    while (probe > 1e-300 && g(probe * 0.5) >= target) probe *= 0.5;
    lo = probe * 0.5;
    hi = probe;
    if (g(lo) >= target) return lo;
  }
  return bisect_increasing([&](double t) { return g(t) - target; }, lo, hi, rel_tol);
}

/// Golden-section search for the minimum of a unimodal function on [a, b].
template <class G>
std::pair<double, double> golden_section_minimize(G&& g, double a, double b,
                                                  double rel_tol = 1e-12, int max_iter = 300) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = g(c), fd = g(d);
  for (int it = 0; it < max_iter && (b - a) > rel_tol * (std::abs(c) + std::abs(d)); ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = g(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = g(d);
    }
  }
  return fc < fd ? std::pair{c, fc} : std::pair{d, fd};
}

/// Adaptive Gauss-Kronrod integral of g over [a, b].
template <class G>
double adaptive(G&& g, double a, double b, double tol = 1e-13, double* error = nullptr) {
  double err = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      std::function<double(double)>(g), a, b, 18, tol, &err);
  if (error) *error = err;
  return value;
}

/// log of int_0^inf exp(rel(z)) dz for a log-integrand normalised so that
/// rel(0) is O(1); throws DivergenceError when exp-sinh cannot converge.
/// With `kinks`, a failed exp-sinh pass is retried piecewise, for integrands
/// that are continuous but not smooth.
template <class Rel>
double log_integral_rel(Rel&& rel, double tol = 1e-13, bool kinks = false) {
  // one integrator per nesting level: Boost's integrator is not reentrant
  thread_local std::vector<std::unique_ptr<boost::math::quadrature::exp_sinh<double>>> pool;
  thread_local std::size_t level = 0;
  if (pool.size() <= level) pool.push_back(std::make_unique<boost::math::quadrature::exp_sinh<double>>());
  auto& integrator = *pool[level];
  struct LevelGuard {
    std::size_t& l;
    explicit LevelGuard(std::size_t& x) : l(x) { ++l; }
    ~LevelGuard() { --l; }
  } guard(level);
  auto g = [&](double z) {
    const double v = rel(z);
    return v < -745.0 ? 0.0 : std::exp(v);
  };
  double err = 0.0, l1 = 0.0, value = 0.0;
  bool ok = true;
  try {
    value = integrator.integrate(g, 0.0, kInf, tol, &err, &l1);
  } catch (const std::exception&) {
    ok = false;
  }
  if (ok && std::isfinite(value) && value > 0.0 && err <= 1e-6 * value) return std::log(value);
  if (!kinks) throw DivergenceError("log_integral_rel: tail integral does not converge", kInf);

  // Kinks (e.g. where |f1 - f2| crosses zero) defeat exp-sinh. Fall back to
  // Gauss-Kronrod on doubling pieces, split at local minima of rel, until
  // two pieces add nothing.
  auto gk = [&](double lo, double hi, double& e) {
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(std::function<double(double)>(g), lo, hi,
                                                                           12, tol, &e);
  };
  double total = 0.0, total_err = 0.0, a = 0.0, b = 1.0;
  int quiet = 0;
  for (int piece = 0; piece < 64 && quiet < 2; ++piece, a = b, b *= 2.0) {
    constexpr int kSamples = 64;
    std::vector<double> cuts{a};
    std::array<double, kSamples + 1> v{};
    for (int i = 0; i <= kSamples; ++i) v[i] = rel(a + (b - a) * i / kSamples);
    for (int i = 1; i < kSamples; ++i)
      if (v[i] <= v[i - 1] && v[i] <= v[i + 1] && v[i] < std::max(v[i - 1], v[i + 1])) {
        const double lo = a + (b - a) * (i - 1) / kSamples, hi = a + (b - a) * (i + 1) / kSamples;
        cuts.push_back(golden_section_minimize([&](double z) { return rel(z); }, lo, hi, 1e-14).first);
      }
    cuts.push_back(b);
    double part = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      if (!(cuts[k + 1] > cuts[k])) continue;
      double e = 0.0;
      part += gk(cuts[k], cuts[k + 1], e);
      total_err += e;
    }
    if (!std::isfinite(part)) break;
    total += part;
    quiet = part <= 1e-16 * total ? quiet + 1 : 0;
  }
  if (total_err > 1e-6 * total) quiet = 0;
  if (quiet < 2 || !(total > 0.0))
    throw DivergenceError("log_integral_rel: tail integral does not converge", kInf);
  return std::log(total);
}

/// log of int_a^inf exp(log_g(y)) dy for integrands that decay beyond a.
/// Returns -inf when log_g(a) = -inf.
template <class LogG>
double log_integral_to_infinity(LogG&& log_g, double a, double tol = 1e-13) {
  const double l0 = log_g(a);
  if (!std::isfinite(l0)) {
    if (l0 > 0) throw DivergenceError("log_integral_to_infinity: integrand is infinite", kInf);
    return -kInf;
  }
  return l0 + log_integral_rel([&](double z) { return log_g(a + z) - l0; }, tol);
}

/// int_a^b exp(log_g(x)) dx on [a, b] in the variable v = log(1 + x), which
/// makes algebraic decay in x smooth over long depth ranges.
template <class LogG>
double integrate_log_integrand(LogG&& log_g, double a, double b, double tol = 1e-10) {
  if (!(b > a)) return 0.0;
  const double va = std::log1p(a), vb = std::log1p(b);
  auto h = [&](double v) {
    const double x = std::expm1(v);
    const double l = log_g(x) + v;  // dx = (1 + x) dv
    return l < -745.0 ? 0.0 : std::exp(l);
  };
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(std::function<double(double)>(h), va, vb,
                                                                      10, tol);
}

/// Partial integrals of exp(log_g) over [x0, X_k] for an increasing depth
/// schedule, plus a convergence verdict.
struct DepthSeries {
  std::vector<double> depths;
  std::vector<double> partials;
  bool converged = false;
  /// Log-log slope of partials versus depth over the last three points.
  double rate = 0.0;
};

/// Least-squares slope of log(y) against log(x).
inline double loglog_slope(std::span<const double> x, std::span<const double> y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t k = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) continue;
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++k;
  }
  if (k < 2) return 0.0;
  const double den = k * sxx - sx * sx;
  return den == 0.0 ? 0.0 : (k * sxy - sx * sy) / den;
}

/// Integrate exp(log_g) from x0 up to each depth in `schedule`; the series
/// is Cauchy when the last increment is below `cauchy_tol`.
template <class LogG>
DepthSeries depth_series(LogG&& log_g, double x0, std::span<const double> schedule,
                         double cauchy_tol = 1e-6) {
  DepthSeries out;
  double acc = 0.0, prev = x0;
  for (double depth : schedule) {
    if (depth <= prev) continue;
    acc += integrate_log_integrand(log_g, prev, depth);
    prev = depth;
    out.depths.push_back(depth);
    out.partials.push_back(acc);
  }
  const std::size_t k = out.partials.size();
  if (k >= 2) {
    out.converged = std::abs(out.partials[k - 1] - out.partials[k - 2]) < cauchy_tol;
    const std::size_t first = k >= 3 ? k - 3 : 0;
    out.rate = loglog_slope(std::span(out.depths).subspan(first),
                            std::span(out.partials).subspan(first));
  }
  return out;
}

/// Default depth schedule 10, 100, ..., 1e7 for cutoff radii rho = exp(-X).
inline std::vector<double> default_depth_schedule() {
  std::vector<double> d;
  for (int k = 1; k <= 7; ++k) d.push_back(std::pow(10.0, k));
  return d;
}

}  // namespace hessian_lab::numerics
