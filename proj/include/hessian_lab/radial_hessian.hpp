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
 * \file radial_hessian.hpp
 * \brief Radial solutions of the complex m-Hessian equation H_m(u) = f dV on
 * the unit ball of C^n with zero boundary values.
 *
 * For radial data the equation integrates twice in closed form:
 *
 *     F(t)   = c_m int_0^t r^{2n-1} f(r) dr,   c_m = 1 / (2^{2n-m-1} (n-1)!)
 *     -u(rho) = int_rho^1 t^{1-2n/m} F(t)^{1/m} dt
 *
 * and conversely f = (1/c_m) rho^{1-2n} d/drho [Psi^m] with
 * Psi = rho^{2n/m-1} u'. The same formulas cover m = n.
 *
 * Inside the innermost positive grid node both integrals are evaluated in
 * the depth variable x = -log rho, so singular densities and the bounded /
 * unbounded question can be examined far beyond double-precision radii.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "hessian_lab/error.hpp"
#include "hessian_lab/numerics.hpp"
#include "hessian_lab/params.hpp"
#include "hessian_lab/radial.hpp"
#include "hessian_lab/verification.hpp"

namespace hessian_lab {

/// Inner cutoff radius rho = exp(-depth), stored by depth so that cutoffs
/// like exp(-1e7) are representable.
class Cutoff {
 public:
  static Cutoff from_radius(double rho) {
    if (!(rho > 0.0) || !(rho < 1.0)) throw DomainError("Cutoff: radius must lie in (0, 1)");
    return Cutoff(-std::log(rho));
  }
  static Cutoff from_log(double depth) {
    if (!(depth > 0.0) || !std::isfinite(depth)) throw DomainError("Cutoff: depth must be positive and finite");
    return Cutoff(depth);
  }
  [[nodiscard]] double depth() const { return depth_; }
  /// May underflow to 0.
  [[nodiscard]] double radius() const { return std::exp(-depth_); }

 private:
  explicit Cutoff(double depth) : depth_(depth) {}
  double depth_;
};

/// Depths 10, 100, ..., 1e7.
inline std::vector<Cutoff> default_cutoffs() {
  std::vector<Cutoff> out;
  for (double d : numerics::default_depth_schedule()) out.push_back(Cutoff::from_log(d));
  return out;
}

namespace detail {

/// Mass function F at the grid nodes and the outer integral from each node
/// to 1, without the contribution inside the innermost positive node.
struct RadialCore {
  HessianParams params;
  DensitySpec density;
  std::vector<double> radii;  ///< positive nodes, last = 1
  std::vector<double> mass;   ///< F at radii
  std::vector<double> outer;  ///< int_{radii[i]}^1 t^{1-2n/m} F^{1/m} dt
  double depth_min = 0.0;     ///< -log radii[0]
  double log_norm_min = 0.0;  ///< log_inner_normalised (analytic) or log_inner_scaled at depth_min

  [[nodiscard]] double integrand_exponent() const { return 1.0 - 2.0 * params.n / params.m; }

  /// log of the outer integrand written in x = -log t (including dt).
  [[nodiscard]] double log_outer_integrand_at_depth(double x) const {
    const int n = params.n;
    const double log_inner = log_inner_mass_at_depth(density, x, n);
    if (log_inner == -numerics::kInf) return log_inner;
    const double log_mass = std::log(params.mass_normalisation()) + log_inner;
    return -(2.0 - 2.0 * n / params.m) * x + log_mass / params.m;
  }

  /// log_outer_integrand_at_depth(depth_min + z) - log_outer_integrand_at_depth(depth_min),
  /// assembled from O(1) differences.
  [[nodiscard]] double log_outer_ratio(double z) const {
    const int n = params.n;
    const double x = depth_min;
    double dmass;
    if (density.is_analytic()) {
      const double df = density.log_ratio_at_depth(x, z);
      if (df == -numerics::kInf) return df;
      dmass = df + log_inner_normalised(density, x + z, n) - log_norm_min;
    } else {
      dmass = log_inner_scaled(density, x + z, n) - log_norm_min;
      if (dmass == -numerics::kInf) return dmass;
    }
    return -(2.0 - 2.0 * n / params.m) * z + (-2.0 * n * z + dmass) / params.m;
  }
};

inline RadialCore radial_core(const DensitySpec& f, const HessianParams& params, const RadialGrid& grid) {
  params.validate();
  RadialCore core{params, f, {}, {}, {}, 0.0, 0.0};
  for (double r : grid.radii())
    if (r > 0.0) core.radii.push_back(r);
  const std::size_t N = core.radii.size();
  const int n = params.n;
  const double cm = params.mass_normalisation();
  const double k = core.integrand_exponent();
  const double inv_m = 1.0 / params.m;
  core.depth_min = -std::log(core.radii[0]);

  double log_inner0;
  try {
    log_inner0 = log_inner_mass_at_depth(f, core.depth_min, n);
  } catch (const DivergenceError&) {
    throw DomainError("solve_hessian: density is not integrable at the origin");
  }
  core.mass.assign(N, 0.0);
  core.mass[0] = log_inner0 == -numerics::kInf ? 0.0 : cm * std::exp(log_inner0);
  if (log_inner0 != -numerics::kInf)
    core.log_norm_min =
        f.is_analytic() ? log_inner_normalised(f, core.depth_min, n) : log_inner_scaled(f, core.depth_min, n);

  auto weight = [&](double r) { return std::pow(r, 2 * n - 1) * f(r); };
  for (std::size_t i = 0; i + 1 < N; ++i)
    core.mass[i + 1] = core.mass[i] + cm * numerics::gauss_cell<8>(weight, core.radii[i], core.radii[i + 1]);

  core.outer.assign(N, 0.0);
  const auto& rule = numerics::gauss_legendre<8>();
  for (std::size_t i = N - 1; i-- > 0;) {
    const double a = core.radii[i], b = core.radii[i + 1];
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double sum = 0.0;
    for (int j = 0; j < 8; ++j) {
      const double t = mid + half * rule.nodes[j];
      const double Ft = core.mass[i] + cm * numerics::gauss_cell<8>(weight, a, t);
      if (Ft > 0.0) sum += rule.weights[j] * std::exp(k * std::log(t) + inv_m * std::log(Ft));
    }
    core.outer[i] = core.outer[i + 1] + half * sum;
  }
  return core;
}

/// Derivative of y with respect to x at every node: three-point formulas on
/// the nonuniform grid, one-sided at the ends.
inline std::vector<double> nodal_derivative(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  std::vector<double> d(n, 0.0);
  if (n < 2) return d;
  if (n == 2) {
    d[0] = d[1] = (y[1] - y[0]) / (x[1] - x[0]);
    return d;
  }
  auto three = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t at) {
    const double xa = x[a], xb = x[b], xc = x[c], t = x[at];
    return y[a] * ((t - xb) + (t - xc)) / ((xa - xb) * (xa - xc)) +
           y[b] * ((t - xa) + (t - xc)) / ((xb - xa) * (xb - xc)) +
           y[c] * ((t - xa) + (t - xb)) / ((xc - xa) * (xc - xb));
  };
  d[0] = three(0, 1, 2, 0);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = three(i - 1, i, i + 1, i);
  d[n - 1] = three(n - 3, n - 2, n - 1, n - 1);
  return d;
}

/// Tail of the outer integral from depth_min to infinity, or the divergence
/// rate when the cutoff-refined partial integrals keep growing.
inline double outer_tail(const RadialCore& core) {
  auto log_g = [&core](double x) { return core.log_outer_integrand_at_depth(x); };
  if (core.mass[0] == 0.0) return 0.0;
  try {
    const double l0 = log_g(core.depth_min);
    return std::exp(l0 + numerics::log_integral_rel([&core](double z) { return core.log_outer_ratio(z); }, 1e-12));
  } catch (const DivergenceError&) {
  }
  std::vector<double> schedule;
  for (double d : numerics::default_depth_schedule())
    if (d > core.depth_min) schedule.push_back(d);
  auto series = numerics::depth_series(log_g, core.depth_min, schedule);
  if (!series.converged) {
    std::vector<double> totals;
    for (double p : series.partials) totals.push_back(p + core.outer[0]);
    const std::size_t k = totals.size();
    const std::size_t first = k >= 3 ? k - 3 : 0;
    const double rate = numerics::loglog_slope(std::span(series.depths).subspan(first),
                                               std::span(totals).subspan(first));
    throw UnboundedSolutionError("solve_hessian: the solution is unbounded at the origin", rate);
  }
  return series.partials.back();
}

}  // namespace detail

/// Radial solution u of H_m(u) = f dV, u = 0 on the unit sphere, sampled on
/// `grid` with exact slopes. Throws UnboundedSolutionError when -u(0) is
/// infinite.
inline RadialFunction solve_hessian(const DensitySpec& f, const HessianParams& params,
                                    const RadialGrid& grid = RadialGrid::graded()) {
  if (grid[0] != 0.0) throw DomainError("solve_hessian: the grid must contain the origin");
  if (f.is_zero()) {
    std::vector<double> r(grid.radii().begin(), grid.radii().end());
    return RadialFunction(r, std::vector<double>(r.size(), 0.0), RadialKind::kPotential,
                          std::vector<double>(r.size(), 0.0));
  }
  const auto core = detail::radial_core(f, params, grid);
  const double tail = detail::outer_tail(core);
  const std::size_t N = core.radii.size();
  const double k = core.integrand_exponent();
  std::vector<double> r(N + 1), u(N + 1), du(N + 1);
  r[0] = 0.0;
  u[0] = -(core.outer[0] + tail);
  for (std::size_t i = 0; i < N; ++i) {
    r[i + 1] = core.radii[i];
    u[i + 1] = -core.outer[i];
    du[i + 1] = core.mass[i] > 0.0 ? std::exp(k * std::log(core.radii[i]) + std::log(core.mass[i]) / params.m)
                                   : 0.0;
  }
  u[N] = 0.0;
  du[0] = (u[1] - u[0]) / r[1];
  return RadialFunction(std::move(r), std::move(u), RadialKind::kPotential, std::move(du));
}

/// Density f with H_m(u) = f dV for a radial potential u. Uses
/// Psi = rho^{2n/m-1} u' and d[Psi^m] = m Psi^{m-1} Psi'; Psi' is taken as a
/// logarithmic derivative where Psi > 0, which is exact for powers of rho.
/// The value at the origin is copied from the first positive node.
inline RadialFunction hessian_density(const RadialFunction& u, const HessianParams& params) {
  params.validate();
  if (u.kind() != RadialKind::kPotential) throw DomainError("hessian_density: expects a potential");
  const int n = params.n, m = params.m;
  const double cm = params.mass_normalisation();
  const auto radii = u.radii();
  const std::size_t first = radii[0] > 0.0 ? 0 : 1;
  std::span<const double> r = radii.subspan(first);
  const std::size_t N = r.size();
  if (N < 3) throw DomainError("hessian_density: need at least three positive nodes");

  std::vector<double> du;
  if (u.has_exact_slopes()) {
    du.assign(u.slopes().begin() + first, u.slopes().end());
  } else {
    du = detail::nodal_derivative(r, u.values().subspan(first));
  }
  const double p = 2.0 * n / m - 1.0;
  std::vector<double> psi(N), log_r(N), log_psi(N);
  bool all_positive = true;
  for (std::size_t i = 0; i < N; ++i) {
    psi[i] = std::pow(r[i], p) * du[i];
    log_r[i] = std::log(r[i]);
    log_psi[i] = psi[i] > 0.0 ? std::log(psi[i]) : -numerics::kInf;
    all_positive = all_positive && psi[i] > 0.0;
  }
  const auto dpsi = detail::nodal_derivative(r, psi);
  std::vector<double> dlog;
  if (all_positive) dlog = detail::nodal_derivative(log_r, log_psi);

  auto stencil_positive = [&](std::size_t i) {
    const std::size_t a = i == 0 ? 0 : (i + 1 == N ? N - 3 : i - 1);
    return psi[a] > 0.0 && psi[a + 1] > 0.0 && psi[a + 2] > 0.0;
  };
  std::vector<double> local_dlog(N, 0.0);
  if (!all_positive) {
    // log-derivative only on stencils where Psi stays positive
    for (std::size_t i = 0; i < N; ++i) {
      if (!stencil_positive(i)) continue;
      const std::size_t a = i == 0 ? 0 : (i + 1 == N ? N - 3 : i - 1);
      std::span<const double> xs(&log_r[a], 3), ys(&log_psi[a], 3);
      local_dlog[i] = detail::nodal_derivative(xs, ys)[i - a];
    }
  }

  std::vector<double> f(N);
  double scale = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    double v;
    if (psi[i] > 0.0 && (all_positive || stencil_positive(i))) {
      const double L = all_positive ? dlog[i] : local_dlog[i];
      v = (m / cm) * L * std::exp(m * log_psi[i] - 2.0 * n * log_r[i]);
    } else {
      v = (1.0 / cm) * std::pow(r[i], 1 - 2 * n) * m * std::pow(psi[i], m - 1) * dpsi[i];
    }
    f[i] = v;
    scale = std::max(scale, std::abs(v));
  }
  const double tol = 1e-8 * std::max(1.0, scale);
  for (double& v : f) {
    if (v < -tol) throw NotMSubharmonicError("hessian_density: negative Hessian density");
    v = std::max(v, 0.0);
  }
  std::vector<double> rr(r.begin(), r.end());
  if (first == 1) {
    rr.insert(rr.begin(), 0.0);
    const double inner = f.front();
    f.insert(f.begin(), inner);
  }
  return RadialFunction(std::move(rr), std::move(f), RadialKind::kDensity);
}

/// solve_hessian followed by hessian_density, compared with the sampled input.
struct RoundtripResult {
  RadialFunction potential;
  RadialFunction density;    ///< sampled input
  RadialFunction recovered;
  double rel_l1_error = 0.0;  ///< int |recovered - f| dV / int |f| dV
};

inline RoundtripResult density_roundtrip(const DensitySpec& f, const HessianParams& params,
                                         const RadialGrid& grid = RadialGrid::graded()) {
  auto u = solve_hessian(f, params, grid);
  auto rec = hessian_density(u, params);
  auto fs = f.sample(grid);
  std::vector<double> diff(fs.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = std::abs(rec.values()[i] - fs.values()[i]);
  const RadialFunction d(std::vector<double>(fs.radii().begin(), fs.radii().end()), std::move(diff),
                         RadialKind::kDensity);
  const double norm = ball_integral(fs, params);
  const double err = ball_integral(d, params);
  const double rel = norm > 0.0 ? err / norm : err;
  return {std::move(u), std::move(fs), std::move(rec), rel};
}

/// Radius and volume of the sublevel set {u < -s}.
struct SublevelGeometry {
  double radius = 0.0;
  double volume = 0.0;
};

/// {u < -s} is the ball of radius sup{rho : u(rho) < -s}; empty when
/// u(0) >= -s.
inline SublevelGeometry sublevel_geometry(const RadialFunction& u, double s, const HessianParams& params) {
  if (u.kind() != RadialKind::kPotential) throw DomainError("sublevel_geometry: expects a potential");
  if (!(s > 0.0)) throw DomainError("sublevel_geometry: s must be > 0");
  const auto values = u.values();
  const auto radii = u.radii();
  const double level = -s;
  // first node with u >= -s
  const auto it = std::lower_bound(values.begin(), values.end(), level);
  const std::size_t j = static_cast<std::size_t>(it - values.begin());
  SublevelGeometry g;
  if (j == 0) return g;
  double lo = radii[j - 1], hi = radii[j];
  if (values[j] > level) {
    g.radius = numerics::bisect_increasing([&](double r) { return u(r) - level; }, lo, hi, 1e-15);
  } else {
    g.radius = hi;
  }
  g.volume = params.ball_volume(g.radius);
  return g;
}

/// e_{m,m}(u) = int (-u)^m f dV.
inline double energy_mm(const RadialFunction& u, const RadialFunction& f, const HessianParams& params) {
  params.validate();
  if (u.kind() != RadialKind::kPotential || f.kind() != RadialKind::kDensity)
    throw DomainError("energy_mm: expects a potential and a density");
  std::vector<double> nodes(u.radii().begin(), u.radii().end());
  nodes.insert(nodes.end(), f.radii().begin(), f.radii().end());
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  const int m = params.m;
  double worst = 0.0;
  const double e = ball_integral_fn(
      [&](double r) {
        const double v = std::pow(std::max(-u(r), 0.0), m) * f(r);
        worst = std::min(worst, -u(r));
        return v;
      },
      nodes, params);
  if (worst < -1e-12 * std::max(1.0, u.sup_abs())) throw DomainError("energy_mm: potential is positive somewhere");
  return e;
}

/// Radial check of H_m(U_n) >= h^{m/n} dV, where (dd^c U_n)^n = h dV.
inline VerificationRecord mixed_measure_check(const DensitySpec& h, const HessianParams& params,
                                              const RadialGrid& grid = RadialGrid::graded()) {
  params.validate();
  VerificationRecord rec;
  rec.name = "mixed_measure";
  rec.tolerance = 1e-6;
  if (h.is_zero()) {
    rec.margin = 0.0;
    rec.scale = 1.0;
    return rec.finish();
  }
  RadialFunction un = [&] {
    try {
      return solve_hessian(h, params.with_m(params.n), grid);
    } catch (const DivergenceError& e) {
      throw UnsupportedInstanceError(std::string("mixed_measure_check: ") + e.what());
    }
  }();
  const auto hm = hessian_density(un, params);
  const double q = static_cast<double>(params.m) / params.n;
  double scale = 1.0;
  double worst_ratio = numerics::kInf;
  const auto r = hm.radii();
  for (std::size_t i = 1; i < r.size(); ++i) {
    const double rhs = std::pow(h(r[i]), q);
    scale = std::max(scale, rhs);
    rec.observe(hm.values()[i] - rhs);
    if (rhs > 0.0) worst_ratio = std::min(worst_ratio, hm.values()[i] / rhs);
  }
  rec.scale = scale;
  rec.details["min_ratio"] = worst_ratio;
  rec.details["density_at_rho_1"] = hm.values().back();
  return rec.finish();
}

/// Constant C(n, m) of the first Holder step between U_m and U_n.
inline double holder_constant_c(int n, int m) {
  const double cm_inv = std::ldexp(1.0, 2 * n - m - 1) * factorial(n - 1);
  const double cn_inv = std::ldexp(1.0, n - 1) * factorial(n - 1);
  return std::pow(cm_inv, static_cast<double>(m) / n) /
         (cn_inv * std::pow(2.0 * n, static_cast<double>(n - m) / n));
}

/// D(n, m) = C(n, m)^{1/n} (n / (2n - 2m))^{(n^2 - m^2)/n^2}; D(n, n) = 1.
inline double holder_constant_d(int n, int m) {
  if (m == n) return 1.0;
  const double e = static_cast<double>(n * n - m * m) / (n * n);
  return std::pow(holder_constant_c(n, m), 1.0 / n) * std::pow(n / (2.0 * n - 2.0 * m), e);
}

/// -U_n <= D (-U_m)^{m^2/n^2} (1 - rho^{(2n-2m)/n})^{(n^2-m^2)/n^2} with
/// H_m(U_m) = f and (dd^c U_n)^n = f^{m/n}.
inline VerificationRecord holder_chain_check(const DensitySpec& f, const HessianParams& params,
                                             const RadialGrid& grid = RadialGrid::graded()) {
  params.validate();
  VerificationRecord rec;
  rec.name = "holder_chain";
  rec.tolerance = 1e-8;
  rec.scale = 1.0;
  const int n = params.n, m = params.m;
  const double q = static_cast<double>(m) / n;
  RadialFunction um = RadialFunction::constant(0.0, grid), un = um;
  try {
    um = solve_hessian(f, params, grid);
    un = solve_hessian(f.power(q), params.with_m(n), grid);
  } catch (const DivergenceError& e) {
    throw UnsupportedInstanceError(std::string("holder_chain_check: ") + e.what());
  }
  const double d = holder_constant_d(n, m);
  const double e1 = q * q, e2 = 1.0 - q * q, e3 = 2.0 - 2.0 * q;
  const auto r = um.radii();
  double margin_at_0 = 0.0;
  for (std::size_t i = 0; i + 1 < r.size(); ++i) {
    const double lhs = -un.values()[i];
    const double shape = m == n ? 1.0 : std::pow(1.0 - std::pow(r[i], e3), e2);
    const double rhs = d * std::pow(std::max(-um.values()[i], 0.0), e1) * shape;
    rec.observe(rhs - lhs);
    if (i == 0) margin_at_0 = rhs - lhs;
  }
  rec.details["D"] = d;
  rec.details["C"] = holder_constant_c(n, m);
  rec.details["lhs_at_0"] = -un.values()[0];
  rec.details["margin_at_0"] = margin_at_0;
  return rec.finish();
}

/// Verdict of the cutoff-refinement test for sup |U_m|.
struct BoundednessResult {
  bool bounded = false;
  double sup = 0.0;   ///< last value when bounded
  double rate = 0.0;  ///< log-log growth exponent in the depth when unbounded
  std::vector<double> depths;
  std::vector<double> values;  ///< -U_m at rho = exp(-depth)
};

/// Computes -U_m(exp(-X)) for each cutoff depth X; the sequence is judged
/// bounded when the last successive difference is below `cauchy_tol`.
inline BoundednessResult boundedness_probe(const DensitySpec& f, const HessianParams& params,
                                           std::span<const Cutoff> cutoffs,
                                           const RadialGrid& grid = RadialGrid::graded(),
                                           double cauchy_tol = 1e-6) {
  params.validate();
  if (cutoffs.size() < 2) throw DomainError("boundedness_probe: need at least two cutoffs");
  std::vector<double> depths;
  for (const auto& c : cutoffs) depths.push_back(c.depth());
  for (std::size_t i = 1; i < depths.size(); ++i)
    if (!(depths[i] > depths[i - 1])) throw DomainError("boundedness_probe: cutoff radii must decrease");

  BoundednessResult out;
  out.depths = depths;
  if (f.is_zero()) {
    out.values.assign(depths.size(), 0.0);
    out.bounded = true;
    return out;
  }
  const auto core = detail::radial_core(f, params, grid);
  std::vector<double> log_r;
  for (double r : core.radii) log_r.push_back(std::log(r));
  // -U on the positive grid nodes, interpolated monotonically in log rho
  std::vector<double> neg_u = core.outer;
  const double x_min = core.depth_min;
  auto log_g = [&core](double x) { return core.log_outer_integrand_at_depth(x); };
  double acc = core.outer[0], prev = x_min;
  for (double X : depths) {
    double v;
    if (X <= x_min) {
      const double lr = -X;
      auto it = std::lower_bound(log_r.begin(), log_r.end(), lr);
      const std::size_t j = std::min<std::size_t>(static_cast<std::size_t>(it - log_r.begin()), log_r.size() - 1);
      if (j == 0 || log_r[j] == lr) {
        v = neg_u[j];
      } else {
        const double w = (lr - log_r[j - 1]) / (log_r[j] - log_r[j - 1]);
        v = (1.0 - w) * neg_u[j - 1] + w * neg_u[j];
      }
    } else {
      acc += numerics::integrate_log_integrand(log_g, prev, X);
      prev = X;
      v = acc;
    }
    out.values.push_back(v);
  }
  const std::size_t k = out.values.size();
  out.bounded = std::abs(out.values[k - 1] - out.values[k - 2]) < cauchy_tol;
  if (out.bounded) {
    out.sup = out.values.back();
  } else {
    const std::size_t first = k >= 3 ? k - 3 : 0;
    out.rate = numerics::loglog_slope(std::span(out.depths).subspan(first),
                                      std::span(out.values).subspan(first));
    out.sup = numerics::kInf;
  }
  return out;
}

inline BoundednessResult boundedness_probe(const DensitySpec& f, const HessianParams& params) {
  const auto cutoffs = default_cutoffs();
  return boundedness_probe(f, params, cutoffs);
}

}  // namespace hessian_lab
