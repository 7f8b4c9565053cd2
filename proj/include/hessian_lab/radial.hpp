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
 * \file radial.hpp
 * \brief Radial functions of rho = |z| on the closed unit ball of C^n.
 *
 * A RadialFunction is a table of samples on a strictly increasing grid
 * 0 <= rho_0 < ... < rho_N = 1, interpolated by cubic Hermite pieces. Slopes
 * are either supplied exactly (solver output, analytic profiles) or
 * estimated with the monotone Fritsch-Carlson rule, so monotone data stays
 * monotone between nodes.
 *
 * A DensitySpec is an analytic density family; it can be evaluated at any
 * radius and at any depth x = -log rho, which is how singular behaviour at
 * the origin is handled without underflow.
 */

#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hessian_lab/error.hpp"
#include "hessian_lab/numerics.hpp"
#include "hessian_lab/params.hpp"

namespace hessian_lab {

/// Strictly increasing radii from 0 (or a positive inner cutoff) up to 1.
class RadialGrid {
 public:
  /// Geometric with `ratio` from rho_min up to rho_switch, then uniform with
  /// `uniform_cells` cells on [rho_switch, 1]; the origin is node 0.
  static RadialGrid graded(double rho_min = 1e-8, double ratio = 1.05, double rho_switch = 0.1,
                           std::size_t uniform_cells = 10000) {
    if (!(rho_min > 0.0) || !(rho_min < rho_switch) || !(rho_switch < 1.0) || !(ratio > 1.0) ||
        uniform_cells < 1)
      throw DomainError("RadialGrid::graded: invalid parameters");
    std::vector<double> r{0.0};
    for (double x = rho_min; x < rho_switch * (1.0 - 1e-12); x *= ratio) r.push_back(x);
    for (std::size_t i = 0; i <= uniform_cells; ++i)
      r.push_back(rho_switch + (1.0 - rho_switch) * static_cast<double>(i) / uniform_cells);
    r.back() = 1.0;
    return RadialGrid(std::move(r));
  }

  /// 0 = rho_0 < ... < rho_N = 1 equally spaced.
  static RadialGrid uniform(std::size_t cells) {
    if (cells < 1) throw DomainError("RadialGrid::uniform: need at least one cell");
    std::vector<double> r(cells + 1);
    for (std::size_t i = 0; i <= cells; ++i) r[i] = static_cast<double>(i) / cells;
    r.back() = 1.0;
    return RadialGrid(std::move(r));
  }

  /// 0, rho_min, rho_min * ratio, ..., 1.
  static RadialGrid geometric(double rho_min, double ratio) {
    if (!(rho_min > 0.0) || !(rho_min < 1.0) || !(ratio > 1.0))
      throw DomainError("RadialGrid::geometric: invalid parameters");
    std::vector<double> r{0.0};
    for (double x = rho_min; x < 1.0 / (1.0 + 1e-9 * ratio); x *= ratio) r.push_back(x);
    if (r.back() > 1.0 - 1e-12 * ratio) r.pop_back();
    r.push_back(1.0);
    return RadialGrid(std::move(r));
  }

  static RadialGrid from_radii(std::vector<double> radii) { return RadialGrid(std::move(radii)); }

  /// Same grid with extra nodes merged in (duplicates dropped).
  [[nodiscard]] RadialGrid with_nodes(std::vector<double> extra) const {
    extra.insert(extra.end(), radii_.begin(), radii_.end());
    std::sort(extra.begin(), extra.end());
    extra.erase(std::unique(extra.begin(), extra.end()), extra.end());
    std::erase_if(extra, [](double r) { return r < 0.0 || r > 1.0; });
    return RadialGrid(std::move(extra));
  }

  [[nodiscard]] std::span<const double> radii() const { return radii_; }
  [[nodiscard]] std::size_t size() const { return radii_.size(); }
  [[nodiscard]] double operator[](std::size_t i) const { return radii_[i]; }
  /// Smallest positive node.
  [[nodiscard]] double rho_min() const { return radii_[0] > 0.0 ? radii_[0] : radii_[1]; }

 private:
  explicit RadialGrid(std::vector<double> radii) : radii_(std::move(radii)) {
    if (radii_.size() < 2) throw DomainError("RadialGrid: need at least two nodes");
    if (radii_.front() < 0.0 || radii_.back() != 1.0)
      throw DomainError("RadialGrid: radii must start at >= 0 and end at 1");
    for (std::size_t i = 1; i < radii_.size(); ++i)
      if (!(radii_[i] > radii_[i - 1])) throw DomainError("RadialGrid: radii must be strictly increasing");
  }

  std::vector<double> radii_;
};

enum class RadialKind { kDensity, kPotential };

namespace detail {

/// Fritsch-Carlson monotone slopes for nonuniform nodes.
inline std::vector<double> monotone_slopes(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  std::vector<double> d(n, 0.0);
  if (n == 2) {
    d[0] = d[1] = (y[1] - y[0]) / (x[1] - x[0]);
    return d;
  }
  std::vector<double> h(n - 1), delta(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    h[k] = x[k + 1] - x[k];
    delta[k] = (y[k + 1] - y[k]) / h[k];
  }
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (delta[k - 1] * delta[k] <= 0.0) continue;
    const double w1 = 2.0 * h[k] + h[k - 1], w2 = h[k] + 2.0 * h[k - 1];
    d[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
  }
  auto edge = [](double h0, double h1, double m0, double m1) {
    double dd = ((2.0 * h0 + h1) * m0 - h0 * m1) / (h0 + h1);
    if (dd * m0 <= 0.0) return 0.0;
    if (m0 * m1 <= 0.0 && std::abs(dd) > std::abs(3.0 * m0)) dd = 3.0 * m0;
    return dd;
  };
  d[0] = edge(h[0], h[1], delta[0], delta[1]);
  d[n - 1] = edge(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
  return d;
}

}  // namespace detail

/// Samples of a radial function with cubic Hermite interpolation.
class RadialFunction {
 public:
  RadialFunction(std::vector<double> radii, std::vector<double> values, RadialKind kind,
                 std::vector<double> slopes = {})
      : radii_(std::move(radii)), values_(std::move(values)), slopes_(std::move(slopes)), kind_(kind) {
    (void)RadialGrid::from_radii(radii_);
    if (values_.size() != radii_.size()) throw DomainError("RadialFunction: size mismatch");
    exact_slopes_ = !slopes_.empty();
    if (exact_slopes_ && slopes_.size() != radii_.size())
      throw DomainError("RadialFunction: slope size mismatch");
    for (double v : values_)
      if (!std::isfinite(v)) throw DomainError("RadialFunction: values must be finite");
    check_invariants();
    if (!exact_slopes_) slopes_ = detail::monotone_slopes(radii_, values_);
  }

  /// Samples `fn` (and optionally its derivative) on `grid`.
  template <class Fn>
  static RadialFunction sample(Fn&& fn, const RadialGrid& grid, RadialKind kind) {
    std::vector<double> r(grid.radii().begin(), grid.radii().end()), v(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) v[i] = fn(r[i]);
    return RadialFunction(std::move(r), std::move(v), kind);
  }

  template <class Fn, class DFn>
  static RadialFunction sample(Fn&& fn, DFn&& dfn, const RadialGrid& grid, RadialKind kind) {
    std::vector<double> r(grid.radii().begin(), grid.radii().end()), v(r.size()), d(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
      v[i] = fn(r[i]);
      d[i] = dfn(r[i]);
    }
    return RadialFunction(std::move(r), std::move(v), kind, std::move(d));
  }

  /// chi_{B(0, radius)} as a density: a jump is encoded by a second node a
  /// relative 1e-12 beyond `radius`.
  static RadialFunction indicator(double radius, const RadialGrid& grid, double height = 1.0) {
    if (!(radius > 0.0) || !(radius < 1.0)) throw DomainError("indicator: radius must lie in (0, 1)");
    const double after = radius * (1.0 + 1e-12);
    auto g = grid.with_nodes({radius, after});
    std::vector<double> r(g.radii().begin(), g.radii().end()), v(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) v[i] = r[i] <= radius ? height : 0.0;
    return RadialFunction(std::move(r), std::move(v), RadialKind::kDensity);
  }

  static RadialFunction constant(double c, const RadialGrid& grid) {
    return sample([c](double) { return c; }, [](double) { return 0.0; }, grid, RadialKind::kDensity);
  }

  [[nodiscard]] double operator()(double rho) const {
    if (rho <= radii_.front()) return values_.front();
    if (rho >= radii_.back()) return values_.back();
    const std::size_t k = cell(rho);
    const double h = radii_[k + 1] - radii_[k];
    const double t = (rho - radii_[k]) / h;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * values_[k] + (t3 - 2 * t2 + t) * h * slopes_[k] +
           (-2 * t3 + 3 * t2) * values_[k + 1] + (t3 - t2) * h * slopes_[k + 1];
  }

  [[nodiscard]] double derivative(double rho) const {
    if (rho < radii_.front() || rho > radii_.back()) return 0.0;
    const std::size_t k = rho >= radii_.back() ? radii_.size() - 2 : cell(rho);
    const double h = radii_[k + 1] - radii_[k];
    const double t = (rho - radii_[k]) / h;
    const double t2 = t * t;
    return ((6 * t2 - 6 * t) * values_[k] + (-6 * t2 + 6 * t) * values_[k + 1]) / h +
           (3 * t2 - 4 * t + 1) * slopes_[k] + (3 * t2 - 2 * t) * slopes_[k + 1];
  }

  [[nodiscard]] std::span<const double> radii() const { return radii_; }
  [[nodiscard]] std::span<const double> values() const { return values_; }
  [[nodiscard]] std::span<const double> slopes() const { return slopes_; }
  [[nodiscard]] bool has_exact_slopes() const { return exact_slopes_; }
  [[nodiscard]] RadialKind kind() const { return kind_; }
  [[nodiscard]] std::size_t size() const { return radii_.size(); }
  [[nodiscard]] RadialGrid grid() const { return RadialGrid::from_radii(radii_); }

  /// Pointwise multiple c * f (c >= 0 keeps the tag valid).
  [[nodiscard]] RadialFunction scaled(double c) const {
    auto v = values_;
    for (double& x : v) x *= c;
    std::vector<double> s;
    if (exact_slopes_) {
      s = slopes_;
      for (double& x : s) x *= c;
    }
    return RadialFunction(radii_, std::move(v), kind_, std::move(s));
  }

  /// Sup of |f| over the nodes.
  [[nodiscard]] double sup_abs() const {
    double s = 0.0;
    for (double v : values_) s = std::max(s, std::abs(v));
    return s;
  }

 private:
  [[nodiscard]] std::size_t cell(double rho) const {
    auto it = std::upper_bound(radii_.begin(), radii_.end(), rho);
    std::size_t k = static_cast<std::size_t>(it - radii_.begin());
    return std::min(k == 0 ? 0 : k - 1, radii_.size() - 2);
  }

  void check_invariants() const {
    if (kind_ == RadialKind::kDensity) {
      for (double v : values_)
        if (v < 0.0) throw DomainError("RadialFunction: density values must be nonnegative");
      return;
    }
    double scale = 0.0;
    for (double v : values_) scale = std::max(scale, std::abs(v));
    const double tol = 1e-12 * std::max(scale, 1e-300);
    if (std::abs(values_.back()) > tol) throw DomainError("RadialFunction: potential must vanish at rho = 1");
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (values_[i] > tol) throw DomainError("RadialFunction: potential must be nonpositive");
      if (i > 0 && values_[i] < values_[i - 1] - tol)
        throw DomainError("RadialFunction: potential must be nondecreasing in rho");
    }
  }

  std::vector<double> radii_;
  std::vector<double> values_;
  std::vector<double> slopes_;
  RadialKind kind_;
  bool exact_slopes_ = false;
};

/// Analytic radial density families.
class DensitySpec {
 public:
  struct Const {
    double c = 1.0;
  };
  /// coef * rho^{-a} (A - log rho)^{-b}, A >= 1.
  struct PowerLog {
    double coef = 1.0;
    double a = 0.0;
    double b = 0.0;
    double A = 1.0;
  };
  struct Table {
    std::shared_ptr<const RadialFunction> fn;
  };
  struct Custom {
    std::string name;
    std::function<double(double)> fn;
    /// Optional log f(exp(-x)); without it the value at exp(-x) is used.
    std::function<double(double)> log_depth;
  };
  using Family = std::variant<Const, PowerLog, Table, Custom>;

  static DensitySpec constant(double c) {
    if (!(c >= 0.0) || !std::isfinite(c)) throw DomainError("const density must be finite and >= 0");
    return DensitySpec(Const{c});
  }

  static DensitySpec power_log(double a, double b, double A = 1.0, double coef = 1.0) {
    if (!(A >= 1.0)) throw DomainError("powerlog density: need A >= 1");
    if (!(coef >= 0.0) || !std::isfinite(coef)) throw DomainError("powerlog density: coef must be >= 0");
    return DensitySpec(PowerLog{coef, a, b, A});
  }

  static DensitySpec table(RadialFunction fn) {
    if (fn.kind() != RadialKind::kDensity) throw DomainError("table density: need a density-tagged function");
    return DensitySpec(Table{std::make_shared<const RadialFunction>(std::move(fn))});
  }

  /// Two-column text table: radius value, strictly increasing radii ending at 1.
  static DensitySpec table_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("table density: cannot open " + path);
    std::vector<double> r, v;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      for (char& ch : line)
        if (ch == ',') ch = ' ';
      std::istringstream ls(line);
      double a, b;
      if (!(ls >> a >> b)) {
        if (r.empty()) continue;  // header row
        throw DomainError("table density: malformed line '" + line + "'");
      }
      r.push_back(a);
      v.push_back(b);
    }
    return table(RadialFunction(std::move(r), std::move(v), RadialKind::kDensity));
  }

  static DensitySpec custom(std::string name, std::function<double(double)> fn,
                            std::function<double(double)> log_depth = {}) {
    return DensitySpec(Custom{std::move(name), std::move(fn), std::move(log_depth)});
  }

  /// |f1 - f2| pointwise.
  static DensitySpec abs_difference(const DensitySpec& f1, const DensitySpec& f2) {
    auto value = [f1, f2](double rho) {
      const double a = f1(rho), b = f2(rho);
      if (std::isinf(a) || std::isinf(b)) {
        const double x = -std::log(rho);
        return std::exp(log_abs_diff(f1.log_at_depth(x), f2.log_at_depth(x)));
      }
      return std::abs(a - b);
    };
    auto log_depth = [f1, f2](double x) { return log_abs_diff(f1.log_at_depth(x), f2.log_at_depth(x)); };
    return custom("|" + f1.describe() + " - " + f2.describe() + "|", value, log_depth);
  }

  /// Parses `const:1.0`, `powerlog:a=2,b=1.5,A=1[,c=2]` or `table:<path>`.
  static DensitySpec parse(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) throw DomainError("density spec: missing ':' in '" + std::string(text) + "'");
    const std::string kind(text.substr(0, colon));
    const std::string rest(text.substr(colon + 1));
    if (kind == "const") return constant(parse_number(rest));
    if (kind == "table") return table_from_file(rest);
    if (kind == "powerlog") {
      auto kv = parse_key_values(rest);
      PowerLog p;
      for (const auto& [k, v] : kv) {
        if (k == "a")
          p.a = v;
        else if (k == "b")
          p.b = v;
        else if (k == "A")
          p.A = v;
        else if (k == "c" || k == "coef")
          p.coef = v;
        else
          throw DomainError("density spec: unknown powerlog key '" + k + "'");
      }
      return power_log(p.a, p.b, p.A, p.coef);
    }
    throw DomainError("density spec: unknown family '" + kind + "'");
  }

  [[nodiscard]] double operator()(double rho) const {
    return std::visit(
        [rho](const auto& f) -> double {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, Const>) {
            return f.c;
          } else if constexpr (std::is_same_v<T, PowerLog>) {
            if (f.coef == 0.0) return 0.0;
            if (rho <= 0.0) {
              if (f.a > 0.0 || (f.a == 0.0 && f.b < 0.0)) return numerics::kInf;
              if (f.a < 0.0 || f.b > 0.0) return 0.0;
              return f.coef;
            }
            const double lr = std::log(rho);
            return f.coef * std::exp(-f.a * lr - f.b * std::log(f.A - lr));
          } else if constexpr (std::is_same_v<T, Table>) {
            return std::max(0.0, (*f.fn)(rho));
          } else {
            return f.fn(rho);
          }
        },
        family_);
  }

  /// log f(exp(-x)); -inf where f vanishes.
  [[nodiscard]] double log_at_depth(double x) const {
    return std::visit(
        [this, x](const auto& f) -> double {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, Const>) {
            return f.c > 0.0 ? std::log(f.c) : -numerics::kInf;
          } else if constexpr (std::is_same_v<T, PowerLog>) {
            if (f.coef == 0.0) return -numerics::kInf;
            return std::log(f.coef) + f.a * x - f.b * std::log(f.A + x);
          } else {
            if constexpr (std::is_same_v<T, Custom>) {
              if (f.log_depth) return f.log_depth(x);
            }
            const double v = (*this)(std::exp(-x));
            return v > 0.0 ? std::log(v) : -numerics::kInf;
          }
        },
        family_);
  }

  /// log f(exp(-x-z)) - log f(exp(-x)), exact for the analytic families.
  [[nodiscard]] double log_ratio_at_depth(double x, double z) const {
    if (std::holds_alternative<Const>(family_)) return 0.0;
    if (auto* p = std::get_if<PowerLog>(&family_)) return p->a * z - p->b * std::log1p(z / (p->A + x));
    const double l1 = log_at_depth(x + z), l0 = log_at_depth(x);
    if (l1 == -numerics::kInf) return l1;
    return l1 - l0;
  }

  /// f^e pointwise.
  [[nodiscard]] DensitySpec power(double e) const {
    return std::visit(
        [e, this](const auto& f) -> DensitySpec {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, Const>) {
            return constant(std::pow(f.c, e));
          } else if constexpr (std::is_same_v<T, PowerLog>) {
            return power_log(f.a * e, f.b * e, f.A, std::pow(f.coef, e));
          } else {
            auto self = *this;
            return custom("(" + describe() + ")^" + format_number(e),
                          [self, e](double rho) { return std::pow(self(rho), e); },
                          [self, e](double x) { return e * self.log_at_depth(x); });
          }
        },
        family_);
  }

  /// c * f pointwise.
  [[nodiscard]] DensitySpec scaled(double c) const {
    if (!(c >= 0.0)) throw DomainError("DensitySpec::scaled: factor must be >= 0");
    return std::visit(
        [c, this](const auto& f) -> DensitySpec {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, Const>) {
            return constant(c * f.c);
          } else if constexpr (std::is_same_v<T, PowerLog>) {
            return power_log(f.a, f.b, f.A, c * f.coef);
          } else {
            auto self = *this;
            const double lc = std::log(c);
            return custom(format_number(c) + "*(" + describe() + ")",
                          [self, c](double rho) { return c * self(rho); },
                          [self, lc](double x) { return lc + self.log_at_depth(x); });
          }
        },
        family_);
  }

  /// True for the constant and power-log families, whose depth ratios are exact.
  [[nodiscard]] bool is_analytic() const { return !std::holds_alternative<Custom>(family_); }

  [[nodiscard]] bool is_zero() const {
    if (auto* c = std::get_if<Const>(&family_)) return c->c == 0.0;
    if (auto* p = std::get_if<PowerLog>(&family_)) return p->coef == 0.0;
    return false;
  }

  /// Samples on a grid; a singular value at the origin is replaced by the
  /// value at the first positive node.
  [[nodiscard]] RadialFunction sample(const RadialGrid& grid) const {
    std::vector<double> r(grid.radii().begin(), grid.radii().end()), v(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) v[i] = (*this)(r[i]);
    if (!std::isfinite(v[0])) v[0] = v.size() > 1 ? v[1] : 0.0;
    return RadialFunction(std::move(r), std::move(v), RadialKind::kDensity);
  }

  [[nodiscard]] std::string describe() const {
    return std::visit(
        [](const auto& f) -> std::string {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, Const>) {
            return "const:" + format_number(f.c);
          } else if constexpr (std::is_same_v<T, PowerLog>) {
            std::string s = "powerlog:a=" + format_number(f.a) + ",b=" + format_number(f.b) +
                            ",A=" + format_number(f.A);
            if (f.coef != 1.0) s += ",c=" + format_number(f.coef);
            return s;
          } else if constexpr (std::is_same_v<T, Table>) {
            return "table:" + std::to_string(f.fn->size()) + " nodes";
          } else {
            return f.name;
          }
        },
        family_);
  }

  [[nodiscard]] const Family& family() const { return family_; }

  static std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
  }

 private:
  explicit DensitySpec(Family f) : family_(std::move(f)) {}

  /// log|e^a - e^b|.
  static double log_abs_diff(double a, double b) {
    if (a < b) std::swap(a, b);
    if (a == -numerics::kInf) return a;
    if (b == -numerics::kInf) return a;
    if (a == b) return -numerics::kInf;
    return a + std::log1p(-std::exp(b - a));
  }

  static double parse_number(const std::string& s) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(s, &pos);
      if (pos != s.size()) throw DomainError("bad number '" + s + "'");
      return v;
    } catch (const std::logic_error&) {
      throw DomainError("bad number '" + s + "'");
    }
  }

  static std::map<std::string, double> parse_key_values(const std::string& s) {
    std::map<std::string, double> out;
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw DomainError("expected key=value, got '" + item + "'");
      out[item.substr(0, eq)] = parse_number(item.substr(eq + 1));
    }
    return out;
  }

  Family family_;
};

/// (2 pi^n / (n-1)!) int g(rho) rho^{2n-1} drho over the cells of `nodes`.
template <class G>
double ball_integral_fn(G&& g, std::span<const double> nodes, const HessianParams& params) {
  const int k = 2 * params.n - 1;
  return params.sphere_factor() *
         numerics::gauss_composite<8>([&](double r) { return g(r) * std::pow(r, k); }, nodes);
}

/// Ball integral of a tabulated radial function.
inline double ball_integral(const RadialFunction& f, const HessianParams& params) {
  params.validate();
  if (f.kind() != RadialKind::kDensity) throw DomainError("ball_integral: expects a density-tagged function");
  return ball_integral_fn(f, f.radii(), params);
}

/// Ball integral of a tabulated density over B(0, radius).
inline double ball_integral(const RadialFunction& f, const HessianParams& params, double radius) {
  params.validate();
  if (f.kind() != RadialKind::kDensity) throw DomainError("ball_integral: expects a density-tagged function");
  if (!(radius > 0.0)) return 0.0;
  if (radius >= 1.0) return ball_integral(f, params);
  std::vector<double> nodes;
  for (double r : f.radii()) {
    if (r >= radius) break;
    nodes.push_back(r);
  }
  nodes.push_back(radius);
  return ball_integral_fn(f, nodes, params);
}

/// Ball integrals of a tabulated density over B(0, r) for many radii, from
/// cumulative per-cell sums; agrees with ball_integral(f, params, r).
class CumulativeBallMass {
 public:
  CumulativeBallMass(const RadialFunction& f, const HessianParams& params) : f_(f), params_(params) {
    params.validate();
    if (f.kind() != RadialKind::kDensity) throw DomainError("CumulativeBallMass: expects a density");
    const auto r = f.radii();
    cum_.assign(r.size(), 0.0);
    for (std::size_t i = 1; i < r.size(); ++i) cum_[i] = cum_[i - 1] + cell(r[i - 1], r[i]);
  }

  [[nodiscard]] double operator()(double radius) const {
    if (!(radius > 0.0)) return 0.0;
    const auto r = f_.radii();
    if (radius >= r.back()) return cum_.back();
    const auto it = std::upper_bound(r.begin(), r.end(), radius);
    const std::size_t k = static_cast<std::size_t>(it - r.begin()) - 1;
    return cum_[k] + (radius > r[k] ? cell(r[k], radius) : 0.0);
  }

 private:
  [[nodiscard]] double cell(double a, double b) const {
    const int k = 2 * params_.n - 1;
    return params_.sphere_factor() * numerics::gauss_cell<8>([&](double x) { return f_(x) * std::pow(x, k); }, a, b);
  }

  RadialFunction f_;
  HessianParams params_;
  std::vector<double> cum_;
};

/// log int_0^inf exp(-2n z) f(exp(-depth-z)) / f(exp(-depth)) dz.
inline double log_inner_normalised(const DensitySpec& f, double depth, int n) {
  return numerics::log_integral_rel(
      [&](double z) { return -2.0 * n * z + f.log_ratio_at_depth(depth, z); }, 1e-13, true);
}

/// log int_0^inf exp(-2n z) f(exp(-depth-z)) dz. Analytic families are
/// normalised by f at `depth`; custom densities may vanish there (|f1 - f2|
/// at a crossing), so they are normalised by the largest of a few probes.
inline double log_inner_scaled(const DensitySpec& f, double depth, int n) {
  if (f.is_analytic()) {
    const double lf = f.log_at_depth(depth);
    if (lf == -numerics::kInf) return lf;
    if (!std::isfinite(lf)) throw DivergenceError("density is infinite at finite depth", numerics::kInf);
    return lf + log_inner_normalised(f, depth, n);
  }
  auto val = [&](double z) { return -2.0 * n * z + f.log_at_depth(depth + z); };
  double ref = -numerics::kInf;
  for (double z : {0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) ref = std::max(ref, val(z));
  if (ref == -numerics::kInf) return ref;
  if (!std::isfinite(ref)) throw DivergenceError("density is infinite at finite depth", numerics::kInf);
  return ref + numerics::log_integral_rel([&](double z) { return val(z) - ref; }, 1e-13, true);
}

/// log int_0^{rho} r^{2n-1} f(r) dr where rho = exp(-depth).
inline double log_inner_mass_at_depth(const DensitySpec& f, double depth, int n) {
  return -2.0 * n * depth + log_inner_scaled(f, depth, n);
}

/// Ball integral of an analytic density on `grid`, with the piece inside the
/// innermost positive node integrated in the depth variable. A tail that
/// fails the cutoff-refinement test raises DivergenceError.
inline double ball_integral(const DensitySpec& f, const HessianParams& params,
                            const RadialGrid& grid = RadialGrid::graded()) {
  params.validate();
  if (f.is_zero()) return 0.0;
  const double rho_min = grid.rho_min();
  auto positive = grid.radii().subspan(grid.radii()[0] > 0.0 ? 0 : 1);
  const double outer = ball_integral_fn(f, positive, params);
  const double depth = -std::log(rho_min);
  auto log_g = [&](double y) { return -2.0 * params.n * y + f.log_at_depth(y); };
  double tail = 0.0;
  try {
    tail = std::exp(log_inner_mass_at_depth(f, depth, params.n));
  } catch (const DivergenceError&) {
    std::vector<double> schedule;
    for (int k = 1; k <= 7; ++k) schedule.push_back(depth * std::pow(10.0, k));
    auto series = numerics::depth_series(log_g, depth, schedule, 1e-10 * std::max(1.0, outer));
    if (!series.converged)
      throw DivergenceError("ball_integral: integral diverges at the origin", series.rate);
    tail = series.partials.back();
  }
  return outer + params.sphere_factor() * tail;
}

}  // namespace hessian_lab
