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
 * \file iteration.hpp
 * \brief De Giorgi iteration on capacity profiles and the L-infinity
 * stability bound built on it.
 *
 * If h is nonincreasing and t h(s + t) <= h(s) eta(h(s)) for t in [0, 1],
 * with eta nondecreasing and eta(t)/t integrable at 0, then h vanishes
 * beyond S = s0 + e int_0^{e h(s0)} eta(t)/t dt, where eta(h(s0)) <= 1/e.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "hessian_lab/capacity.hpp"
#include "hessian_lab/error.hpp"
#include "hessian_lab/numerics.hpp"
#include "hessian_lab/orlicz.hpp"
#include "hessian_lab/params.hpp"
#include "hessian_lab/radial.hpp"
#include "hessian_lab/radial_hessian.hpp"
#include "hessian_lab/verification.hpp"

namespace hessian_lab {

/// Growth function of the iteration. The power-log family is
/// eta(t) = D1^{1/m} max(1, 1 - (D2/m) log t)^{gamma/m}; arbitrary
/// nondecreasing functions are accepted for synthetic runs.
class EtaProfile {
 public:
  static EtaProfile power_log(double d1, double d2, double gamma_over_m, int m) {
    if (!(d1 > 0.0) || !(d2 > 0.0)) throw DomainError("EtaProfile: D1 and D2 must be > 0");
    if (m < 1) throw DomainError("EtaProfile: m must be >= 1");
    if (!(gamma_over_m < -1.0))
      throw ConditionError("EtaProfile: gamma/m must be < -1 for eta(t)/t to be integrable at 0");
    EtaProfile e;
    e.d1_ = d1;
    e.d2_ = d2;
    e.gamma_over_m_ = gamma_over_m;
    e.m_ = m;
    e.power_log_ = true;
    e.name_ = "power-log";
    return e;
  }

  static EtaProfile custom(std::string name, std::function<double(double)> fn) {
    EtaProfile e;
    e.fn_ = std::move(fn);
    e.name_ = std::move(name);
    return e;
  }

  [[nodiscard]] double operator()(double t) const {
    if (!(t >= 0.0)) throw DomainError("eta: t must be >= 0");
    if (!power_log_) return fn_(t);
    if (t == 0.0) return 0.0;
    const double w = std::max(1.0, 1.0 - d2_ / m_ * std::log(t));
    return std::pow(d1_, 1.0 / m_) * std::pow(w, gamma_over_m_);
  }

  /// log eta(exp(lt)); stays finite where exp(lt) underflows.
  [[nodiscard]] double log_at_log(double lt) const {
    if (!power_log_) {
      const double v = fn_(std::exp(lt));
      return v > 0.0 ? std::log(v) : -numerics::kInf;
    }
    return std::log(d1_) / m_ + gamma_over_m_ * std::log(std::max(1.0, 1.0 - d2_ / m_ * lt));
  }

  /// int_0^T eta(t)/t dt computed in tau = log t. With tau = log T - e^y the
  /// algebraic decay of eta(e^tau) as tau -> -inf becomes exponential in y.
  [[nodiscard]] double integral(double T) const {
    if (!(T >= 0.0)) throw DomainError("eta integral: upper limit must be >= 0");
    if (T == 0.0) return 0.0;
    // [1, T] is a finite tau interval
    const double lT = std::log(T);
    double above = 0.0;
    if (lT > 0.0) above = numerics::adaptive([&](double tau) { return std::exp(log_at_log(tau)); }, 0.0, lT, 1e-12);
    const double l1 = std::min(lT, 0.0);
    auto log_g = [&](double y) { return log_at_log(l1 - std::exp(y)) + y; };
    const double upper = numerics::log_integral_to_infinity(log_g, 0.0, 1e-12);
    const double lower = numerics::log_integral_to_infinity([&](double y) { return log_g(-y); }, 0.0, 1e-12);
    return above + std::exp(upper) + std::exp(lower);
  }

  /// Sampled monotonicity on a log grid of (0, 1].
  [[nodiscard]] bool nondecreasing(int samples = 400) const {
    double prev = (*this)(0.0);
    for (int i = 0; i <= samples; ++i) {
      const double v = (*this)(std::exp(-60.0 + 60.0 * i / samples));
      if (v < prev * (1.0 - 1e-14)) return false;
      prev = v;
    }
    return true;
  }

  /// Whether int_0 eta(t)/t dt is finite.
  [[nodiscard]] bool integrable() const {
    if (power_log_) return gamma_over_m_ < -1.0;
    try {
      return std::isfinite(integral(1.0));
    } catch (const DivergenceError&) {
      return false;
    }
  }

  [[nodiscard]] bool is_power_log() const { return power_log_; }
  [[nodiscard]] double D1() const { return d1_; }
  [[nodiscard]] double D2() const { return d2_; }
  [[nodiscard]] double gamma_over_m() const { return gamma_over_m_; }
  [[nodiscard]] int m() const { return m_; }
  [[nodiscard]] const std::string& name() const { return name_; }

 private:
  EtaProfile() = default;

  std::function<double(double)> fn_;
  std::string name_;
  double d1_ = 0.0, d2_ = 0.0, gamma_over_m_ = 0.0;
  int m_ = 1;
  bool power_log_ = false;
};

/// Outcome of one run of the iteration on a capacity profile.
struct IterationReport {
  bool premise_ok = false;
  double premise_margin = 0.0;
  double s0 = 0.0;
  double S_infinity = 0.0;
  double measured_sup = 0.0;
  double bound_rhs = 0.0;
  bool vanishes_beyond = true;  ///< h(s) = 0 at every sampled s >= S_infinity
  std::map<std::string, double> constants;
};

/// Measure constants of mu(K) <= D1 cap max(1, 1 - D2 log cap)^gamma on balls.
struct MeasureCalibration {
  double d1_prime = 0.0;
  double d2 = 0.0;
};

/// D2 comes from the volume-capacity fit (1/(m(1+eps)) in closed form, also
/// used when m = n where the fit is unavailable); D1' is the ball sweep.
inline MeasureCalibration calibrate_measure(const HessianParams& params) {
  params.validate();
  MeasureCalibration c;
  if (params.m < params.n && params.eps > 0.0 && params.eps <= params.eps_max_volume_capacity())
    c.d2 = dk_verify(params, 1e-3, 0.5, 40).D2;
  else
    c.d2 = 1.0 / (params.m * (1.0 + params.eps));
  c.d1_prime = fit_measure_constant(params, c.d2);
  return c;
}

/// eta with D1 = (modular_G(f) + 1) D1' where G = G_{alpha,n/m}. The D2 of
/// the measure estimate enters eta as m^2 D2, since log cap = m log h.
inline EtaProfile build_eta_from_modular(double modular_value, const HessianParams& params, double d1_prime,
                                         double d2) {
  params.validate_for_stability();
  if (!(d1_prime > 0.0) || !(d2 > 0.0)) throw DomainError("build_eta: D1' and D2 must be > 0");
  if (!(modular_value >= 0.0)) throw DomainError("build_eta: modular must be >= 0");
  const double m = params.m;
  return EtaProfile::power_log((modular_value + 1.0) * d1_prime, m * m * d2, params.gamma() / m, params.m);
}

inline EtaProfile build_eta(const RadialFunction& f, const HessianParams& params, double d1_prime, double d2) {
  params.validate_for_stability();
  const auto gen = OrliczGenerator::parametric(params.n, params.m, params.alpha);
  return build_eta_from_modular(modular(gen, f), params, d1_prime, d2);
}

inline EtaProfile build_eta(const DensitySpec& f, const HessianParams& params, double d1_prime, double d2,
                            const RadialGrid& grid = RadialGrid::graded()) {
  params.validate_for_stability();
  const auto gen = OrliczGenerator::parametric(params.n, params.m, params.alpha);
  return build_eta_from_modular(f.is_zero() ? 0.0 : modular(gen, f, grid), params, d1_prime, d2);
}

/// Uniform grid of t in [0, 1].
inline std::vector<double> unit_grid(int points) {
  if (points < 2) throw DomainError("unit_grid: need at least two points");
  std::vector<double> t(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) t[static_cast<std::size_t>(i)] = static_cast<double>(i) / (points - 1);
  return t;
}

/// min over the profile's s grid and `t_grid` of h(s) eta(h(s)) - t h(s + t).
inline VerificationRecord premise_check(const CapacityProfile& h, const EtaProfile& eta,
                                        const std::vector<double>& t_grid) {
  if (!eta.integrable()) throw ConditionError("premise_check: eta(t)/t is not integrable at 0");
  VerificationRecord rec;
  rec.name = "premise";
  rec.tolerance = 1e-9;
  double scale = 0.0;
  for (std::size_t i = 0; i < h.s_grid().size(); ++i) {
    const double s = h.s_grid()[i];
    const double hs = h.h_values()[i];
    const double rhs = hs * eta(hs);
    for (double t : t_grid) {
      if (!(t >= 0.0) || t > 1.0) throw DomainError("premise_check: t must lie in [0, 1]");
      const double lhs = t == 0.0 ? 0.0 : t * h(s + t);
      scale = std::max({scale, lhs, rhs});
      rec.observe(rhs - lhs);
    }
  }
  rec.scale = std::max(scale, 1e-300);
  return rec.finish();
}

/// s0 and S_infinity for a profile satisfying the premise; the premise is
/// re-checked on `t_grid` and reported alongside.
inline IterationReport s_infinity(const CapacityProfile& h, const EtaProfile& eta,
                                  const std::vector<double>& t_grid = unit_grid(21)) {
  IterationReport rep;
  const auto premise = premise_check(h, eta, t_grid);
  rep.premise_ok = premise.pass;
  rep.premise_margin = premise.margin;

  const double target = 1.0 / std::numbers::e;
  auto ok = [&](double s) { return eta(h(s)) <= target; };
  const auto s = h.s_grid();
  std::size_t k = 0;
  while (k < s.size() && !(eta(h.h_values()[k]) <= target)) ++k;
  if (k == s.size()) throw HorizonError("s_infinity: eta(h(s)) <= 1/e is not reached on the s grid");
  if (k == 0) {
    rep.s0 = s[0];
  } else {
    double lo = s[k - 1], hi = s[k];
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
      const double mid = 0.5 * (lo + hi);
      (ok(mid) ? hi : lo) = mid;
    }
    rep.s0 = hi;
  }
  const double h0 = h(rep.s0);
  rep.S_infinity = rep.s0 + std::numbers::e * eta.integral(std::numbers::e * h0);
  rep.bound_rhs = rep.S_infinity;

  if (auto sup = h.source_sup()) {
    rep.measured_sup = *sup;
  } else {
    // support estimate: last grid s with h > 0
    for (std::size_t i = 0; i < s.size(); ++i)
      if (h.h_values()[i] > 0.0) rep.measured_sup = s[i];
  }
  rep.vanishes_beyond = h(rep.S_infinity) == 0.0;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] >= rep.S_infinity && h.h_values()[i] != 0.0) rep.vanishes_beyond = false;

  rep.constants["h_s0"] = h0;
  rep.constants["eta_h_s0"] = eta(h0);
  if (eta.is_power_log()) {
    rep.constants["D1"] = eta.D1();
    rep.constants["D2"] = eta.D2();
    rep.constants["gamma_over_m"] = eta.gamma_over_m();
  }
  return rep;
}

/// Margins of t^m cap({u < -s-t}) <= mu({u < -s}) and, with s = t,
/// mu({u < -t}) <= t^{-m} e_{m,m}(u), where mu = f dV = H_m(u).
/// Grid points whose sublevel set reaches the boundary are skipped.
inline VerificationRecord energy_capacity_check(const RadialFunction& u, const RadialFunction& f,
                                                const HessianParams& params, const std::vector<double>& s_grid,
                                                const std::vector<double>& t_grid) {
  params.validate();
  if (u.kind() != RadialKind::kPotential || f.kind() != RadialKind::kDensity)
    throw DomainError("energy_capacity_check: expects a potential and a density");
  const int m = params.m;
  const double energy = energy_mm(u, f, params);
  const CumulativeBallMass mass(f, params);

  struct Level {
    bool touches = false;
    double mass = 0.0;
    double cap = 0.0;
  };
  auto level = [&](double s) {
    Level l;
    const auto g = sublevel_geometry(u, s, params);
    if (g.radius >= 1.0 - 1e-6) {
      l.touches = true;
      return l;
    }
    if (g.radius > 0.0) {
      l.mass = mass(g.radius);
      l.cap = ball_capacity(g.radius, params);
    }
    return l;
  };

  VerificationRecord rec;
  rec.name = "energy_capacity";
  rec.tolerance = 1e-8;
  double scale = std::max(1e-300, energy);
  double left = numerics::kInf, right = numerics::kInf, displayed = numerics::kInf;
  int restricted = 0;
  for (double s : s_grid) {
    for (double t : t_grid) {
      if (!(s > 0.0) || !(t > 0.0)) throw DomainError("energy_capacity_check: s and t must be > 0");
      const auto inner = level(s + t), outer = level(s);
      if (inner.touches || outer.touches) {
        ++restricted;
        continue;
      }
      const double tm = std::pow(t, m);
      const double lhs = tm * inner.cap;
      scale = std::max({scale, lhs, outer.mass});
      left = std::min(left, outer.mass - lhs);
      displayed = std::min(displayed, energy / tm - outer.mass);
    }
  }
  std::vector<double> diag(s_grid);
  diag.insert(diag.end(), t_grid.begin(), t_grid.end());
  for (double t : diag) {
    const auto l = level(t);
    if (l.touches) {
      ++restricted;
      continue;
    }
    right = std::min(right, energy / std::pow(t, m) - l.mass);
  }
  rec.observe(left);
  rec.observe(right);
  rec.scale = scale;
  rec.details["left_margin"] = std::isinf(left) ? 0.0 : left;
  rec.details["right_margin"] = std::isinf(right) ? 0.0 : right;
  rec.details["displayed_right_margin"] = std::isinf(displayed) ? 0.0 : displayed;
  rec.details["energy"] = energy;
  rec.details["restricted_points"] = restricted;
  return rec.finish();
}

/// Constants of the stability bound.
struct LinftyConstants {
  double C1 = 0.0, C2 = 0.0, C3 = 0.0;
};

/// ||g1 - g2|| + C1 N^{-1/gamma} + C2 e^{1/(2m)} exp(C3 N^{-1/gamma}), where
/// N = ||f1 - f2||_alpha, e = e_{m,m}(U(|f1 - f2|, 0)) and 0^{-1/gamma} = 0.
inline double linfty_bound(double norm_g_diff, double norm_f_diff_alpha, double energy, const HessianParams& params,
                           const LinftyConstants& c) {
  params.validate_for_stability();
  if (!(norm_g_diff >= 0.0) || !(norm_f_diff_alpha >= 0.0) || !(energy >= 0.0))
    throw DomainError("linfty_bound: inputs must be >= 0");
  if (!(c.C1 > 0.0) || !(c.C2 > 0.0) || !(c.C3 > 0.0)) throw DomainError("linfty_bound: constants must be > 0");
  const double p = -1.0 / params.gamma();
  const double np = norm_f_diff_alpha == 0.0 ? 0.0 : std::pow(norm_f_diff_alpha, p);
  return norm_g_diff + c.C1 * np + c.C2 * std::pow(energy, 1.0 / (2.0 * params.m)) * std::exp(c.C3 * np);
}

/// Constants for the norm form of eta, D1 = d1 ||f||_alpha, kappa = m D2,
/// q = -gamma/m. With A = e^{m/|gamma|} (d1 N)^{1/|gamma|}, the level
/// W = A + 1 + kappa gives eta(H) <= 1/e at H = exp((1 - W)/kappa); the
/// energy estimate with s = t yields s0 <= 2 sqrt(e) e^{1/(2m)} exp(A/(2 kappa))
/// and the integral term is at most A/(kappa (q - 1)).
inline LinftyConstants calibrate_constants(const HessianParams& params, double d1, double d2) {
  params.validate_for_stability();
  if (!(d1 > 0.0) || !(d2 > 0.0)) throw DomainError("calibrate_constants: d1 and d2 must be > 0");
  const double m = params.m;
  const double g = std::abs(params.gamma());
  const double kappa = m * d2;
  const double q = g / m;
  const double a = std::exp(m / g) * std::pow(d1, 1.0 / g);
  return {a / (kappa * (q - 1.0)), 2.0 * std::sqrt(std::numbers::e), a / (2.0 * kappa)};
}

/// s grid for a potential: from the level where the sublevel set leaves the
/// boundary collar to 1.25 sup|u|.
inline std::vector<double> potential_s_grid(const RadialFunction& u, int points = 200) {
  const double sup = -u.values().front();
  if (!(sup > 0.0)) return {0.0, 1.0};
  const double s_min = std::max(-u(1.0 - 1e-5), 1e-9 * sup);
  std::vector<double> s(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) s[static_cast<std::size_t>(i)] = s_min + (1.25 * sup - s_min) * i / (points - 1);
  return s;
}

/// Solve, profile, eta and S_infinity for one density.
struct DeGiorgiRun {
  RadialFunction u;
  EtaProfile eta;
  IterationReport report;
  double modular = 0.0;
  MeasureCalibration calibration;
};

inline DeGiorgiRun degiorgi_pipeline(const DensitySpec& f, const HessianParams& params,
                                     const RadialGrid& grid = RadialGrid::graded(),
                                     std::optional<MeasureCalibration> calibration = std::nullopt) {
  params.validate_for_stability();
  const auto cal = calibration ? *calibration : calibrate_measure(params);
  auto u = solve_hessian(f, params, grid);
  const auto gen = OrliczGenerator::parametric(params.n, params.m, params.alpha);
  const double mod = f.is_zero() ? 0.0 : modular(gen, f, grid);
  auto eta = build_eta_from_modular(mod, params, cal.d1_prime, cal.d2);
  if (f.is_zero()) {
    auto h = CapacityProfile::from_function([](double) { return 0.0; }, {0.0, 1.0});
    auto rep = s_infinity(h, eta);
    rep.measured_sup = 0.0;
    return {std::move(u), std::move(eta), rep, mod, cal};
  }
  const auto h = sublevel_capacity_profile(u, potential_s_grid(u), params);
  auto rep = s_infinity(h, eta);
  rep.constants["modular"] = mod;
  rep.constants["D1_prime"] = cal.d1_prime;
  rep.constants["D2_measure"] = cal.d2;
  return {std::move(u), std::move(eta), rep, mod, cal};
}

/// Measured and bounded distance between U(f1, g1) and U(f2, g2) for radial
/// densities and constant boundary values.
struct StabilityReport {
  double measured = 0.0;           ///< sup |U(f1, g1) - U(f2, g2)| on the grid
  double comparison_margin = 0.0;  ///< min of -U(|f1 - f2|) - |U1 - U2| (both with zero boundary data)
  double difference_sup = 0.0;     ///< sup -U(|f1 - f2|, 0)
  double norm_f_diff = 0.0;        ///< Orlicz norm of |f1 - f2| for G_{alpha,n/m}
  double energy = 0.0;
  double g_diff = 0.0;
  LinftyConstants constants;
  MeasureCalibration calibration;
  double bound = 0.0;
  std::optional<IterationReport> lemma;  ///< iteration with the norm form of eta

  [[nodiscard]] bool pass() const { return measured <= bound && comparison_margin >= -1e-12; }
};

inline StabilityReport stability_pipeline(const DensitySpec& f1, const DensitySpec& f2, const HessianParams& params,
                                          double g1 = 0.0, double g2 = 0.0,
                                          const RadialGrid& grid = RadialGrid::graded(),
                                          std::optional<MeasureCalibration> calibration = std::nullopt) {
  params.validate_for_stability();
  StabilityReport rep;
  rep.calibration = calibration ? *calibration : calibrate_measure(params);
  rep.constants = calibrate_constants(params, rep.calibration.d1_prime, rep.calibration.d2);
  rep.g_diff = std::abs(g1 - g2);

  const auto u1 = solve_hessian(f1, params, grid);
  const auto u2 = solve_hessian(f2, params, grid);
  const auto diff = DensitySpec::abs_difference(f1, f2);
  const auto ud = solve_hessian(diff, params, grid);
  const auto fd = diff.sample(grid);

  double measured = 0.0, cmp = numerics::kInf;
  for (std::size_t i = 0; i < u1.size(); ++i) {
    const double d = u1.values()[i] - u2.values()[i];
    measured = std::max(measured, std::abs(d + g1 - g2));
    cmp = std::min(cmp, -ud.values()[i] - std::abs(d));
  }
  rep.measured = measured;
  rep.comparison_margin = cmp;
  rep.difference_sup = -ud.values().front();

  const auto gen = OrliczGenerator::parametric(params.n, params.m, params.alpha);
  const bool same = fd.sup_abs() == 0.0;
  rep.norm_f_diff = same ? 0.0 : orlicz_norm(gen, fd);
  rep.energy = same ? 0.0 : energy_mm(ud, fd, params);
  rep.bound = linfty_bound(rep.g_diff, rep.norm_f_diff, rep.energy, params, rep.constants);

  if (!same) {
    const auto eta = EtaProfile::power_log(rep.calibration.d1_prime * rep.norm_f_diff,
                                           params.m * params.m * rep.calibration.d2, params.gamma() / params.m,
                                           params.m);
    const auto h = sublevel_capacity_profile(ud, potential_s_grid(ud), params);
    auto lemma = s_infinity(h, eta);
    lemma.bound_rhs = rep.bound;
    lemma.constants["C1"] = rep.constants.C1;
    lemma.constants["C2"] = rep.constants.C2;
    lemma.constants["C3"] = rep.constants.C3;
    lemma.constants["norm_f_diff"] = rep.norm_f_diff;
    lemma.constants["energy"] = rep.energy;
    rep.lemma = lemma;
  }
  return rep;
}

}  // namespace hessian_lab
