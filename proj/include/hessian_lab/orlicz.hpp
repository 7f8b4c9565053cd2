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
 * \file orlicz.hpp
 * \brief Orlicz spaces over the unit ball of C^n for radial functions.
 *
 * A generator phi is increasing and convex with phi(0) = 0. Its Young
 * conjugate phi*(s) = sup_t (st - phi(t)) is evaluated at the point where
 * phi' crosses s. Norms:
 *
 *   Luxemburg  ||f||_phi  = inf{lambda > 0 : rho(f / lambda) <= 1}
 *   Orlicz     ||f||^0_phi = inf_{k > 0} (1 + rho(k f)) / k
 *
 * where rho(f) = int phi(|f|) dV is the modular. The second line is the
 * Amemiya form of the dual-ball definition; it is a one-dimensional convex
 * problem in lambda = 1/k.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hessian_lab/error.hpp"
#include "hessian_lab/numerics.hpp"
#include "hessian_lab/params.hpp"
#include "hessian_lab/radial.hpp"
#include "hessian_lab/special_fn.hpp"
#include "hessian_lab/verification.hpp"

namespace hessian_lab {

/// An Orlicz generator phi together with the ambient dimension n of the
/// unit ball it integrates over.
class OrliczGenerator {
 public:
  using Fn = std::function<double(double)>;
  enum class Form { kParametric, kPower, kGeneral };

  /// phi(t) = (1+t)^{n/m} (log(1+t))^alpha on the ball of C^n.
  static OrliczGenerator parametric(int n, int m, double alpha) {
    HessianParams p{n, m, 0.0, alpha};
    p.validate();
    if (!(alpha > 0.0)) throw DomainError("OrliczGenerator: alpha must be > 0");
    OrliczGenerator g;
    g.form_ = Form::kParametric;
    g.n_ = n;
    g.params_ = p;
    g.name_ = "param:n=" + std::to_string(n) + ",m=" + std::to_string(m) + ",alpha=" + DensitySpec::format_number(alpha);
    g.phi_ = [p](double t) { return g_alpha_nm(t, p); };
    g.dphi_ = [p](double t) { return g_alpha_nm_derivative(t, p); };
    g.ddphi_ = [p](double t) {
      if (t <= 0.0) return p.alpha >= 2.0 ? (p.alpha == 2.0 ? 2.0 : 0.0) : numerics::kInf;
      const double r = static_cast<double>(p.n) / p.m, a = p.alpha;
      const double y = std::log1p(t);
      const double base = std::exp((r - 2.0) * y + (a - 2.0) * std::log(y));
      return base * ((r - 1.0) * y * (r * y + a) + (a - 1.0) * (r * y + a) + r * y);
    };
    g.inverse_ = [p](double y) { return g_alpha_nm_inverse(y, p); };
    return g;
  }

  /// phi(t) = t^p with p > 1 on the ball of C^n.
  static OrliczGenerator power(double p, int n = 2) {
    if (!(p > 1.0)) throw DomainError("OrliczGenerator: power must be > 1");
    if (n < 2) throw DomainError("OrliczGenerator: dimension must be >= 2");
    OrliczGenerator g;
    g.form_ = Form::kPower;
    g.n_ = n;
    g.name_ = "power:" + DensitySpec::format_number(p);
    g.power_ = p;
    g.phi_ = [p](double t) { return std::pow(t, p); };
    g.dphi_ = [p](double t) { return p * std::pow(t, p - 1.0); };
    g.ddphi_ = [p](double t) { return p * (p - 1.0) * std::pow(t, p - 2.0); };
    g.inverse_ = [p](double y) { return std::pow(y, 1.0 / p); };
    return g;
  }

  /// Any increasing convex phi with phi(0) = 0; `dphi` is its (increasing)
  /// derivative, `ddphi` optional.
  static OrliczGenerator general(std::string name, Fn phi, Fn dphi, int n = 2, Fn ddphi = {}) {
    if (!phi || !dphi) throw DomainError("OrliczGenerator: phi and phi' are required");
    OrliczGenerator g;
    g.form_ = Form::kGeneral;
    g.n_ = n;
    g.name_ = std::move(name);
    g.phi_ = std::move(phi);
    g.dphi_ = std::move(dphi);
    g.ddphi_ = std::move(ddphi);
    return g;
  }

  /// `param:n=2,m=1,alpha=5` or `power:2`, optionally prefixed by `phi=`.
  /// `n` is the ambient dimension used by the power form.
  static OrliczGenerator parse(std::string_view text, int n = 2) {
    if (text.substr(0, 4) == "phi=") text.remove_prefix(4);
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) throw DomainError("generator spec: missing ':' in '" + std::string(text) + "'");
    const std::string kind(text.substr(0, colon)), rest(text.substr(colon + 1));
    auto number = [](const std::string& s) {
      try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw DomainError("bad number '" + s + "'");
        return v;
      } catch (const std::logic_error&) {
        throw DomainError("bad number '" + s + "'");
      }
    };
    if (kind == "power") return power(number(rest), n);
    if (kind == "param") {
      std::map<std::string, double> kv;
      std::istringstream in(rest);
      std::string item;
      while (std::getline(in, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw DomainError("generator spec: expected key=value, got '" + item + "'");
        kv[item.substr(0, eq)] = number(item.substr(eq + 1));
      }
      for (const auto& [k, v] : kv)
        if (k != "n" && k != "m" && k != "alpha") throw DomainError("generator spec: unknown key '" + k + "'");
      if (!kv.count("n") || !kv.count("m") || !kv.count("alpha"))
        throw DomainError("generator spec: param needs n, m and alpha");
      return parametric(static_cast<int>(kv["n"]), static_cast<int>(kv["m"]), kv["alpha"]);
    }
    throw DomainError("generator spec: unknown form '" + kind + "'");
  }

  [[nodiscard]] double operator()(double t) const {
    if (!(t >= 0.0)) throw DomainError("phi: argument must be >= 0");
    return phi_(t);
  }
  [[nodiscard]] double derivative(double t) const { return dphi_(t); }

  /// log phi(e^{lt}), without overflow for the power and parametric forms.
  [[nodiscard]] double log_of_log(double lt) const {
    if (lt == -numerics::kInf) return -numerics::kInf;
    if (form_ == Form::kPower) return power_ * lt;
    if (form_ == Form::kParametric) {
      // log(1 + e^lt), stable for large lt
      const double y = lt > 0.0 ? lt + std::log1p(std::exp(-lt)) : std::log1p(std::exp(lt));
      return static_cast<double>(params_.n) / params_.m * y + params_.alpha * std::log(y);
    }
    const double v = phi_(std::exp(lt));
    return v > 0.0 ? std::log(v) : -numerics::kInf;
  }

  [[nodiscard]] Form form() const { return form_; }
  [[nodiscard]] int ambient_dimension() const { return n_; }
  /// pi^n / n!.
  [[nodiscard]] double domain_volume() const { return HessianParams{n_, 1}.ball_volume(); }
  [[nodiscard]] const std::string& describe() const { return name_; }
  [[nodiscard]] HessianParams ball_params() const { return HessianParams{n_, 1}; }

  /// phi^{-1}(y).
  [[nodiscard]] double inverse(double y) const {
    if (!(y >= 0.0)) throw DomainError("phi^{-1}: argument must be >= 0");
    if (y == 0.0) return 0.0;
    if (inverse_) return inverse_(y);
    return numerics::invert_increasing(phi_, y, 0.0, 1.0);
  }

  /// The t >= 0 with phi'(t) = s (0 when s <= phi'(0), inf when phi' stays below s).
  [[nodiscard]] double derivative_inverse(double s) const {
    if (!(s >= 0.0)) throw DomainError("derivative_inverse: s must be >= 0");
    if (s <= dphi_(0.0)) return 0.0;
    double hi = 1.0;
    int grow = 0;
    while (dphi_(hi) < s) {
      hi *= 2.0;
      if (++grow > 2000 || !std::isfinite(hi)) return numerics::kInf;
    }
    double lo = 0.0;
    while (hi > 1e-300 && dphi_(hi * 0.5) >= s) hi *= 0.5;
    lo = hi * 0.5;
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
      const double r = dphi_(x) - s;
      if (r == 0.0) return x;
      if (r < 0.0)
        lo = x;
      else
        hi = x;
      double next = 0.5 * (lo + hi);
      if (ddphi_) {
        const double d2 = ddphi_(x);
        const double cand = x - r / d2;
        if (std::isfinite(cand) && cand > lo && cand < hi) next = cand;
      }
      if (std::abs(next - x) <= 1e-16 * x || hi - lo <= 1e-16 * hi) return next;
      x = next;
    }
    return x;
  }

  /// phi*(s) = sup_{t >= 0} (st - phi(t)).
  [[nodiscard]] double conjugate(double s) const {
    if (!(s >= 0.0)) throw DomainError("phi*: s must be >= 0");
    const double t = derivative_inverse(s);
    if (t == 0.0) return 0.0;
    if (std::isinf(t)) return numerics::kInf;
    return std::max(0.0, s * t - phi_(t));
  }

  /// (phi*)^{-1}(y).
  [[nodiscard]] double conjugate_inverse(double y) const {
    if (!(y >= 0.0)) throw DomainError("(phi*)^{-1}: argument must be >= 0");
    if (y == 0.0) return 0.0;
    return numerics::invert_increasing([this](double s) { return conjugate(s); }, y, 0.0, 1.0);
  }

  /// phi* as a generator in its own right: (phi*)'(s) = t*(s).
  [[nodiscard]] OrliczGenerator conjugate_generator() const {
    auto self = std::make_shared<const OrliczGenerator>(*this);
    Fn dd;
    if (ddphi_) {
      dd = [self](double s) {
        const double t = self->derivative_inverse(s);
        const double d2 = self->ddphi_(t);
        return d2 > 0.0 ? 1.0 / d2 : numerics::kInf;
      };
    }
    return general(
        name_ + "*", [self](double s) { return self->conjugate(s); },
        [self](double s) { return self->derivative_inverse(s); }, n_, dd);
  }

  /// Sampled admissibility: phi(0) = 0, increasing, convex, phi(t)/t small
  /// at 1e-8 and large at 1e8.
  [[nodiscard]] VerificationRecord admissibility() const {
    VerificationRecord rec;
    rec.name = "admissibility";
    rec.tolerance = 1e-10;
    rec.observe(-std::abs(phi_(0.0)));
    double prev = 0.0, prev2 = 0.0;
    const int N = 400;
    for (int i = 0; i <= N; ++i) {
      const double t = 10.0 * i / N;
      const double v = phi_(t);
      if (i > 0) rec.observe((v - prev) / std::max(1.0, std::abs(v)));
      if (i > 1) rec.observe((v - 2.0 * prev + prev2) / std::max(1.0, std::abs(v)));
      prev2 = prev;
      prev = v;
    }
    const double small = phi_(1e-8) / 1e-8, large = phi_(1e8) / 1e8;
    rec.details["ratio_at_1e-8"] = small;
    rec.details["ratio_at_1e8"] = large;
    rec.finish();
    rec.pass = rec.pass && small < 1e-3 && large > 1e3;
    return rec;
  }

 private:
  OrliczGenerator() = default;

  Form form_ = Form::kGeneral;
  int n_ = 2;
  double power_ = 2.0;  ///< exponent of the power form
  HessianParams params_{};
  std::string name_;
  Fn phi_, dphi_, ddphi_, inverse_;
};

/// Luxemburg norm, Orlicz norm and modular of one function.
struct NormReport {
  double luxemburg = 0.0;
  double orlicz = 0.0;
  double modular = 0.0;
};

namespace detail {

/// |f| at the Gauss-Legendre points of its grid cells with ball weights, so
/// that every modular is a weighted sum.
struct QuadratureSample {
  std::vector<double> values;
  std::vector<double> weights;

  QuadratureSample(const RadialFunction& f, int n) {
    const auto& rule = numerics::gauss_legendre<8>();
    const double sphere = HessianParams{n, 1}.sphere_factor();
    const auto r = f.radii();
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
      const double mid = 0.5 * (r[i] + r[i + 1]), half = 0.5 * (r[i + 1] - r[i]);
      for (int j = 0; j < 8; ++j) {
        const double x = mid + half * rule.nodes[j];
        values.push_back(std::abs(f(x)));
        weights.push_back(sphere * half * rule.weights[j] * std::pow(x, 2 * n - 1));
      }
    }
  }

  [[nodiscard]] double modular(const OrliczGenerator& gen, double scale) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (values[i] == 0.0) continue;
      sum += weights[i] * gen(values[i] * scale);
    }
    return sum;
  }

  [[nodiscard]] bool is_zero() const {
    return std::all_of(values.begin(), values.end(), [](double v) { return v == 0.0; });
  }
};

inline double luxemburg(const OrliczGenerator& gen, const QuadratureSample& q) {
  if (q.is_zero()) return 0.0;
  // h(lambda) = rho(f / lambda) - 1, decreasing in lambda
  auto h = [&](double log_lambda) { return q.modular(gen, std::exp(-log_lambda)) - 1.0; };
  double lo = 0.0, hi = 0.0;
  int guard = 0;
  double v = h(0.0);
  if (std::isnan(v)) throw NotInSpaceError("luxemburg_norm: modular is not finite");
  if (v > 0.0) {
    lo = 0.0;
    hi = 1.0;
    while (!(h(hi) <= 0.0)) {
      lo = hi;
      hi *= 2.0;
      if (++guard > 60) throw NotInSpaceError("luxemburg_norm: modular is infinite for every scaling");
    }
  } else {
    hi = 0.0;
    lo = -1.0;
    while (!(h(lo) > 0.0)) {
      hi = lo;
      lo *= 2.0;
      if (++guard > 60) return 0.0;
    }
  }
  const double x = numerics::bisect_increasing([&](double l) { return -h(l); }, lo, hi, 0.0, 1e-14);
  return std::exp(x);
}

inline double orlicz(const OrliczGenerator& gen, const QuadratureSample& q, double lux) {
  if (q.is_zero()) return 0.0;
  // G(lambda) = lambda (1 + rho(f / lambda)) is convex in lambda
  auto G = [&](double log_lambda) {
    const double lam = std::exp(log_lambda);
    return lam * (1.0 + q.modular(gen, 1.0 / lam));
  };
  const double l0 = std::log(lux);
  double lo = l0 - std::log(2.0);
  int guard = 0;
  while (G(lo - std::log(2.0)) < G(lo)) {
    lo -= std::log(2.0);
    if (++guard > 200) break;
  }
  const double hi = l0 + std::log(2.0);
  const auto [x, value] = numerics::golden_section_minimize(G, lo - std::log(2.0), hi, 1e-13);
  (void)x;
  return std::min(value, G(l0));
}

}  // namespace detail

/// rho(f) = int phi(|f|) dV over the unit ball.
inline double modular(const OrliczGenerator& gen, const RadialFunction& f) {
  return detail::QuadratureSample(f, gen.ambient_dimension()).modular(gen, 1.0);
}

/// Modular of an analytic density: the sampled part on `grid` plus the piece
/// inside the innermost node, integrated in depth. A tail that keeps growing
/// under cutoff refinement raises DivergenceError.
inline double modular(const OrliczGenerator& gen, const DensitySpec& f,
                      const RadialGrid& grid = RadialGrid::graded()) {
  const auto params = gen.ball_params();
  const int n = params.n;
  auto positive = grid.radii().subspan(grid[0] > 0.0 ? 0 : 1);
  const double outer = ball_integral_fn([&](double r) { return gen(std::abs(f(r))); }, positive, params);
  const double depth = -std::log(grid.rho_min());
  auto log_g = [&](double y) {
    const double lf = f.log_at_depth(y);
    if (lf == -numerics::kInf) return lf;
    return -2.0 * n * y + gen.log_of_log(lf);
  };
  double tail;
  try {
    tail = std::exp(numerics::log_integral_to_infinity(log_g, depth));
  } catch (const DivergenceError&) {
    std::vector<double> schedule;
    for (double d : numerics::default_depth_schedule())
      if (d > depth) schedule.push_back(d);
    auto series = numerics::depth_series(log_g, depth, schedule);
    if (!series.converged) throw DivergenceError("modular: integral diverges at the origin", series.rate);
    tail = series.partials.back();
  }
  return outer + params.sphere_factor() * tail;
}

/// Luxemburg norm; the bisection runs on log(lambda).
inline double luxemburg_norm(const OrliczGenerator& gen, const RadialFunction& f) {
  return detail::luxemburg(gen, detail::QuadratureSample(f, gen.ambient_dimension()));
}

/// Orlicz norm through inf_k (1 + rho(k f)) / k.
inline double orlicz_norm(const OrliczGenerator& gen, const RadialFunction& f) {
  detail::QuadratureSample q(f, gen.ambient_dimension());
  return detail::orlicz(gen, q, detail::luxemburg(gen, q));
}

inline NormReport norms(const OrliczGenerator& gen, const RadialFunction& f) {
  detail::QuadratureSample q(f, gen.ambient_dimension());
  NormReport r;
  r.modular = q.modular(gen, 1.0);
  r.luxemburg = detail::luxemburg(gen, q);
  r.orlicz = detail::orlicz(gen, q, r.luxemburg);
  return r;
}

/// Norms of the indicator of a set of volume V:
/// ||chi_K||_phi = 1 / phi^{-1}(1/V) and ||chi_K||^0_phi = V (phi*)^{-1}(1/V).
inline NormReport indicator_norms(const OrliczGenerator& gen, double volume) {
  if (!(volume > 0.0)) throw DomainError("indicator_norms: volume must be > 0");
  if (volume > gen.domain_volume() * (1.0 + 1e-12))
    throw DomainError("indicator_norms: volume exceeds the ball volume");
  NormReport r;
  r.luxemburg = 1.0 / gen.inverse(1.0 / volume);
  r.orlicz = volume * gen.conjugate_inverse(1.0 / volume);
  r.modular = volume * gen(1.0);
  return r;
}

/// Young, Holder, the indicator bound and the modular bound for one pair (f, g).
struct HolderYoungRecord {
  VerificationRecord young;
  VerificationRecord holder;
  /// int_K f <= ||f||_phi V phi^{-1}(1/V), present when g is an indicator.
  std::optional<VerificationRecord> indicator_bound;
  /// Orlicz norm of f <= modular(f) + 1.
  VerificationRecord modular_bound;

  [[nodiscard]] bool pass() const {
    return young.pass && holder.pass && (!indicator_bound || indicator_bound->pass) && modular_bound.pass;
  }
};

/// Young margin phi(t) + phi*(s) - st on a grid of (t, s) in [0, t_max] x
/// [0, phi'(t_max)].
inline VerificationRecord young_check(const OrliczGenerator& gen, int points = 100, double t_max = 10.0) {
  VerificationRecord rec;
  rec.name = "young";
  rec.tolerance = 1e-9;
  const double s_max = gen.derivative(t_max);
  std::vector<double> conj(points);
  for (int j = 0; j < points; ++j) conj[j] = gen.conjugate(s_max * j / (points - 1));
  for (int i = 0; i < points; ++i) {
    const double t = t_max * i / (points - 1);
    const double pt = gen(t);
    for (int j = 0; j < points; ++j) {
      const double s = s_max * j / (points - 1);
      rec.observe(pt + conj[j] - s * t);
    }
  }
  rec.details["t_max"] = t_max;
  rec.details["s_max"] = s_max;
  return rec.finish();
}

/// Checks Young's inequality, |int fg| <= ||f||^0_phi ||g||_{phi*}, the
/// bound ||f||^0_phi <= rho(f) + 1 and, when g is the indicator of
/// B(0, indicator_radius), int_K f <= ||f||_phi V phi^{-1}(1/V).
inline HolderYoungRecord holder_young_check(const OrliczGenerator& gen, const RadialFunction& f,
                                            const RadialFunction& g,
                                            std::optional<double> indicator_radius = std::nullopt) {
  HolderYoungRecord out;
  out.young = young_check(gen);

  const int n = gen.ambient_dimension();
  const auto params = gen.ball_params();
  detail::QuadratureSample qf(f, n);
  const double lux_f = detail::luxemburg(gen, qf);
  const double orl_f = detail::orlicz(gen, qf, lux_f);
  const double rho_f = qf.modular(gen, 1.0);

  const auto conj = gen.conjugate_generator();
  const double lux_g = detail::luxemburg(conj, detail::QuadratureSample(g, n));
  std::vector<double> nodes(f.radii().begin(), f.radii().end());
  nodes.insert(nodes.end(), g.radii().begin(), g.radii().end());
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  const double fg = std::abs(ball_integral_fn([&](double r) { return f(r) * g(r); }, nodes, params));

  out.holder.name = "holder";
  out.holder.tolerance = 1e-9;
  out.holder.scale = std::max(1.0, orl_f * lux_g);
  out.holder.observe(orl_f * lux_g - fg);
  out.holder.details["lhs"] = fg;
  out.holder.details["rhs"] = orl_f * lux_g;
  out.holder.finish();

  out.modular_bound.name = "modular_bound";
  out.modular_bound.tolerance = 1e-9;
  out.modular_bound.scale = std::max(1.0, rho_f + 1.0);
  out.modular_bound.observe(rho_f + 1.0 - orl_f);
  out.modular_bound.details["lhs"] = orl_f;
  out.modular_bound.details["rhs"] = rho_f + 1.0;
  out.modular_bound.finish();

  if (indicator_radius) {
    const double r = *indicator_radius;
    const double volume = params.ball_volume(r);
    std::vector<double> inner;
    for (double x : f.radii()) {
      if (x >= r) break;
      inner.push_back(x);
    }
    inner.push_back(r);
    const double lhs = ball_integral_fn([&](double x) { return std::abs(f(x)); }, inner, params);
    const double rhs = lux_f * volume * gen.inverse(1.0 / volume);
    VerificationRecord indicator_bound;
    indicator_bound.name = "indicator_bound";
    indicator_bound.tolerance = 1e-9;
    indicator_bound.scale = std::max(1.0, rhs);
    indicator_bound.observe(rhs - lhs);
    indicator_bound.details["lhs"] = lhs;
    indicator_bound.details["rhs"] = rhs;
    indicator_bound.finish();
    out.indicator_bound = indicator_bound;
  }
  return out;
}

}  // namespace hessian_lab
