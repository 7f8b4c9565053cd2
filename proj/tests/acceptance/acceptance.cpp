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

// Acceptance run: one PASS/FAIL line per criterion, each with its wall-clock
// budget. Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hessian_lab/hessian_lab.hpp"
#include "support/oracles.hpp"

namespace hl = hessian_lab;
using std::numbers::pi;

namespace {

/// Collects failed requirements and a short summary of what was measured.
class Check {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 4) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  void note(const std::string& s) { notes_ += (notes_.empty() ? "" : "; ") + s; }

  [[nodiscard]] bool ok() const { return failed_ == 0; }
  [[nodiscard]] std::string text() const {
    std::string s = notes_;
    for (const auto& f : failures_) s += (s.empty() ? "" : "; ") + std::string("failed: ") + f;
    if (failed_ > static_cast<int>(failures_.size())) s += " (+" + std::to_string(failed_ - failures_.size()) + " more)";
    return s;
  }

 private:
  std::vector<std::string> failures_;
  int failed_ = 0;
  std::string notes_;
};

std::string num(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// --- 1 -----------------------------------------------------------------

void lambert(Check& c) {
  const auto rows = hl::lambert_bounds_sweep(1e-6, 1e6, 1000);
  double worst = 0.0;
  for (const auto& r : rows) {
    c.require(r.pass, "bounds at x=" + num(r.x));
    worst = std::max(worst, r.residual / std::max(1.0, r.x));
    c.require(std::abs(r.w - oracle::lambert_w0(r.x)) <= 1e-12 * std::max(1.0, r.w), "oracle at x=" + num(r.x));
  }
  c.note(std::to_string(rows.size()) + " points, max scaled residual " + num(worst, 3));
}

// --- 2 -----------------------------------------------------------------

void gpq_roundtrip(Check& c) {
  double worst = 0.0;
  int count = 0;
  for (double p : {-0.5, -1.0, -2.0, -3.0})
    for (double q : {0.25, 0.5, 1.0, 2.0}) {
      const hl::PowerLogProfile prof{p, q};
      // s spans the image of t with -log t in [1e-5, 40]; closer to t = 1
      // the double nearest G^{-1}(s) no longer resolves s to 1e-9.
      const double ls_lo = std::log(hl::g_pq_eval_log(40.0, prof));
      const double ls_hi = std::log(hl::g_pq_eval_log(1e-5, prof));
      for (int i = 0; i < 50; ++i) {
        const double s = std::exp(ls_lo + (ls_hi - ls_lo) * i / 49.0);
        const double err = rel(hl::g_pq_eval(hl::g_pq_inverse(s, prof), prof), s);
        worst = std::max(worst, err);
        c.require(err <= 1e-9, "p=" + num(p) + " q=" + num(q) + " s=" + num(s));
        ++count;
      }
    }
  c.note(std::to_string(count) + " roundtrips, max rel err " + num(worst, 3));
}

// --- 3 -----------------------------------------------------------------

void orlicz(Check& c) {
  const auto sq = hl::OrliczGenerator::power(2.0, 2);
  const auto par = hl::OrliczGenerator::parametric(2, 1, 5.0);

  // indicator closed forms against bisection / grid oracles
  double worst = 0.0;
  for (const auto* g : {&sq, &par}) {
    auto phi = [g](double t) { return (*g)(t); };
    for (double r : {0.25, 0.5, 0.75}) {
      const double V = hl::HessianParams{2, 1}.ball_volume(r);
      const auto closed = hl::indicator_norms(*g, V);
      auto chi = [r](double x) { return x < r ? 1.0 : 0.0; };
      const double el = rel(closed.luxemburg, oracle::luxemburg(2, phi, chi, {r}));
      const double eo = rel(closed.orlicz, oracle::orlicz(2, phi, chi, {r}));
      worst = std::max({worst, el, eo});
      c.require(el <= 1e-6 && eo <= 1e-6, g->describe() + " indicator r=" + num(r));
    }
  }
  c.note("indicator vs oracle max rel " + num(worst, 3));

  // sandwich on random power-log densities
  std::mt19937_64 rng(20260101);
  std::uniform_real_distribution<double> ua(-1.0, 0.9), ub(-1.0, 3.0), uc(0.1, 5.0);
  const auto grid = hl::RadialGrid::graded(1e-8, 1.1, 0.1, 500);
  double ratio_lo = 2.0, ratio_hi = 1.0;
  for (int i = 0; i < 100; ++i) {
    const auto f = hl::DensitySpec::power_log(ua(rng), ub(rng), 1.0, uc(rng)).sample(grid);
    const auto r = hl::norms(par, f);
    const double ratio = r.orlicz / r.luxemburg;
    ratio_lo = std::min(ratio_lo, ratio);
    ratio_hi = std::max(ratio_hi, ratio);
    c.require(ratio >= 1.0 - 1e-9 && ratio <= 2.0 + 1e-9, "sandwich density " + std::to_string(i));
  }
  c.note("100 densities, orlicz/lux in [" + num(ratio_lo, 4) + ", " + num(ratio_hi, 4) + "]");

  // Young on 100 x 100 grids
  double young = hl::numerics::kInf;
  for (const auto* g : {&sq, &par}) {
    const auto rec = hl::young_check(*g, 100);
    young = std::min(young, rec.margin);
    c.require(rec.margin >= -1e-9, "young " + g->describe());
  }
  const auto p3 = hl::OrliczGenerator::parametric(3, 2, 7.0);
  young = std::min(young, hl::young_check(p3, 100).margin);
  c.require(young >= -1e-9, "young param(3,2,7)");
  c.note("young min margin " + num(young, 3));

  // worked instance of the indicator and modular bounds
  const auto g2 = hl::RadialGrid::graded(1e-8, 1.05, 0.1, 2000).with_nodes({0.5});
  const auto rec = hl::holder_young_check(sq, hl::RadialFunction::constant(1.0, g2), hl::RadialFunction::indicator(0.5, g2),
                                          0.5);
  const double lhs = rec.indicator_bound->details.at("lhs"), rhs = rec.indicator_bound->details.at("rhs");
  c.require(rec.indicator_bound->margin >= 0.0 && rec.modular_bound.margin >= 0.0, "indicator and modular margins");
  // lhs = pi^2/32; rhs = (pi/sqrt 2) (pi^2/32) sqrt(32/pi^2) = pi^2/8
  c.require(rel(lhs, pi * pi / 32.0) <= 1e-6 && rel(rhs, pi * pi / 8.0) <= 1e-6, "indicator bound worked values");
  c.note("indicator bound " + num(lhs, 5) + " <= " + num(rhs, 5));
}

// --- 4 -----------------------------------------------------------------

void solver(Check& c) {
  const hl::HessianParams p21{2, 1};
  const double u21 = hl::solve_hessian(hl::DensitySpec::constant(1.0), p21).values()[0];
  const double u22 = hl::solve_hessian(hl::DensitySpec::constant(1.0), p21.with_m(2)).values()[0];
  c.require(std::abs(u21 + 1.0 / 32.0) <= 1e-8, "U(0) n=2 m=1");
  c.require(std::abs(u22 + 1.0 / (4.0 * std::sqrt(2.0))) <= 1e-8, "U(0) n=2 m=2");
  c.note("U(0) errors " + num(std::abs(u21 + 1.0 / 32.0), 2) + ", " + num(std::abs(u22 + 1.0 / (4.0 * std::sqrt(2.0))), 2));

  const std::vector<hl::DensitySpec> smooth = {
      hl::DensitySpec::constant(1.0),
      hl::DensitySpec::power_log(-1.0, 0.0),
      hl::DensitySpec::power_log(-2.0, 0.0),
      hl::DensitySpec::power_log(-3.0, 0.0, 1.0, 2.0),
      hl::DensitySpec::custom("1+rho^2", [](double r) { return 1.0 + r * r; }),
      hl::DensitySpec::custom("exp(-rho)", [](double r) { return std::exp(-r); }),
      hl::DensitySpec::custom("2+sin(5rho)", [](double r) { return 2.0 + std::sin(5.0 * r); }),
      hl::DensitySpec::custom("1/(1+rho)", [](double r) { return 1.0 / (1.0 + r); }),
      hl::DensitySpec::custom("cosh(rho)", [](double r) { return std::cosh(r); }),
      hl::DensitySpec::custom("(2-rho)^2", [](double r) { return (2.0 - r) * (2.0 - r); }),
  };
  const auto grid = hl::RadialGrid::uniform(10000);
  double worst = 0.0;
  for (const auto& f : smooth) {
    const auto rt = hl::density_roundtrip(f, p21, grid);
    worst = std::max(worst, rt.rel_l1_error);
    c.require(rt.rel_l1_error <= 1e-4, "roundtrip " + f.describe());
  }
  c.note("10 densities, max rel L1 " + num(worst, 3));
}

// --- 5 -----------------------------------------------------------------

void mixed(Check& c) {
  const auto w = hl::mixed_measure_check(hl::DensitySpec::constant(1.0), hl::HessianParams{2, 1});
  const double d = w.details.at("density_at_rho_1");
  c.require(std::abs(d - 4.0 * std::sqrt(2.0)) <= 1e-6, "h=1 density");
  c.require(std::abs(w.details.at("min_ratio") - 4.0 * std::sqrt(2.0)) <= 1e-6, "h=1 density on the grid");
  c.note("h=1 density " + num(d, 10));

  std::mt19937_64 rng(5150);
  std::uniform_real_distribution<double> ua(-1.0, 1.0), ub(0.0, 2.0), uc(0.1, 5.0);
  const std::vector<hl::HessianParams> ps = {{2, 1}, {3, 1}, {3, 2}, {4, 3}};
  const auto grid = hl::RadialGrid::graded(1e-8, 1.05, 0.1, 4000);
  double worst = hl::numerics::kInf;
  for (int i = 0; i < 20; ++i) {
    const auto& p = ps[static_cast<std::size_t>(i) % ps.size()];
    const auto rec = hl::mixed_measure_check(hl::DensitySpec::power_log(ua(rng), ub(rng), 1.0, uc(rng)), p, grid);
    worst = std::min(worst, rec.margin / rec.scale);
    c.require(rec.pass, "random density " + std::to_string(i));
  }
  c.note("20 densities, min margin/scale " + num(worst, 3));
}

// --- 6 -----------------------------------------------------------------

void capacity(Check& c) {
  double worst = 0.0;
  for (auto [n, m] : {std::pair{2, 1}, {2, 2}, {3, 1}, {3, 2}, {4, 3}})
    for (double r : {0.1, 0.25, 0.5, 0.75}) {
      const double closed = hl::ball_capacity(r, hl::HessianParams{n, m});
      const double err = rel(oracle::capacity_mollified(n, m, r), closed);
      worst = std::max(worst, err);
      c.require(err <= 1e-3, "(" + std::to_string(n) + "," + std::to_string(m) + ") r=" + num(r));
    }
  const double cap = hl::ball_capacity(0.5, hl::HessianParams{2, 1});
  c.require(std::abs(cap - 16.0 * pi * pi / 3.0) <= 1e-9 * cap, "worked value");
  c.note("20 radii, max rel err vs oracle " + num(worst, 3) + ", cap(2,1,0.5) " + num(cap, 8));
}

// --- 7 -----------------------------------------------------------------

void dk(Check& c) {
  for (auto [n, m] : {std::pair{2, 1}, {3, 1}, {3, 2}}) {
    const auto rep = hl::dk_verify(hl::HessianParams{n, m, 0.2, 5.0}, 1e-3, 0.5, 40);
    const std::string tag = "(" + std::to_string(n) + "," + std::to_string(m) + ")";
    c.require(rep.all_rows_hold(), tag + " rows");
    c.require(std::abs(rep.slope / rep.expected_slope - 1.0) <= 0.05, tag + " slope " + num(rep.slope));
    c.note(tag + " slope " + num(rep.slope, 5) + " vs " + num(rep.expected_slope, 3));
  }
}

// --- 8 -----------------------------------------------------------------

void energy_capacity(Check& c) {
  struct Case {
    hl::DensitySpec f;
    hl::HessianParams p;
  };
  const std::vector<Case> cases = {
      {hl::DensitySpec::constant(1.0), {2, 1}},
      {hl::DensitySpec::power_log(1.0, 1.0), {2, 1}},
      {hl::DensitySpec::power_log(-2.0, 0.0, 1.0, 3.0), {2, 1}},
      {hl::DensitySpec::power_log(0.5, 2.0), {3, 2}},
      {hl::DensitySpec::custom("2+sin(5rho)", [](double r) { return 2.0 + std::sin(5.0 * r); }), {3, 1}},
  };
  const auto grid = hl::RadialGrid::graded(1e-8, 1.05, 0.1, 4000);
  double worst = hl::numerics::kInf;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto u = hl::solve_hessian(cases[i].f, cases[i].p, grid);
    const double sup = -u.values()[0];
    std::vector<double> s, t;
    for (int j = 1; j <= 20; ++j) {
      s.push_back(sup * j / 21.0);
      t.push_back(sup * j / 21.0);
    }
    const auto rec = hl::energy_capacity_check(u, cases[i].f.sample(grid), cases[i].p, s, t);
    worst = std::min(worst, rec.margin / rec.scale);
    c.require(rec.pass, "potential " + std::to_string(i));
    if (i == 0) {
      const double e = rec.details.at("energy");
      c.require(std::abs(e - pi * pi / 192.0) <= 1e-9, "closed-form energy");
      c.note("e_11 " + num(e, 8));
    }
  }
  c.note("5 potentials, min margin/scale " + num(worst, 3));
}

// --- 9 -----------------------------------------------------------------

void decay_iteration(Check& c) {
  std::vector<double> s;
  for (int i = 0; i <= 400; ++i) s.push_back(4.0 * i / 400.0);
  const auto h = hl::CapacityProfile::from_function([](double x) { return std::max(0.0, 1.0 - x); }, s);
  const auto rep = hl::s_infinity(h, hl::EtaProfile::custom("t", [](double t) { return t; }));
  const double e = std::numbers::e;
  c.require(std::abs(rep.s0 - (1.0 - 1.0 / e)) <= 1e-6, "s0");
  c.require(std::abs(rep.S_infinity - (1.0 - 1.0 / e + e)) <= 1e-6, "S_infinity");
  c.require(h(rep.S_infinity) == 0.0 && rep.vanishes_beyond, "h(S_infinity) = 0");
  c.note("synthetic s0 " + num(rep.s0, 10) + " S_inf " + num(rep.S_infinity, 10));

  const std::vector<hl::HessianParams> ps = {{2, 1, 0.1, 5.0}, {3, 2, 0.1, 7.0}, {3, 1, 0.2, 8.0}};
  const std::vector<hl::DensitySpec> fs = {hl::DensitySpec::constant(1.0), hl::DensitySpec::power_log(0.5, 1.0),
                                           hl::DensitySpec::power_log(0.0, -0.5),
                                           hl::DensitySpec::power_log(-1.0, 0.0, 1.0, 2.0)};
  const auto grid = hl::RadialGrid::graded(1e-8, 1.05, 0.1, 2000);
  int passing = 0, total = 0, outside = 0;
  for (const auto& p : ps) {
    const auto cal = hl::calibrate_measure(p);
    for (const auto& f : fs) {
      ++total;
      // a density outside the Orlicz class has no eta and no premise to check
      std::optional<hl::DeGiorgiRun> run;
      try {
        run = hl::degiorgi_pipeline(f, p, grid, cal);
      } catch (const hl::DivergenceError&) {
        ++outside;
        continue;
      }
      if (!run->report.premise_ok) continue;
      ++passing;
      c.require(run->report.measured_sup <= run->report.S_infinity, "pipeline " + f.describe());
    }
  }
  c.require(passing > 0, "no pipeline instance passed the premise");
  c.note(std::to_string(passing) + "/" + std::to_string(total) + " pipeline instances pass the premise, " +
         std::to_string(outside) + " outside the Orlicz class");
}

// --- 10 ----------------------------------------------------------------

void stability(Check& c) {
  const hl::HessianParams p{2, 1, 0.1, 5.0};
  const auto cal = hl::calibrate_measure(p);
  const auto grid = hl::RadialGrid::graded(1e-8, 1.05, 0.1, 2000);
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> ua(-1.0, 0.5), ub(0.0, 2.0), uc(0.1, 3.0);
  double tightest = 0.0;
  for (int i = 0; i < 10; ++i) {
    const auto f1 = i == 0 ? hl::DensitySpec::constant(1.0) : hl::DensitySpec::power_log(ua(rng), ub(rng), 1.0, uc(rng));
    const auto f2 = i == 0 ? hl::DensitySpec::constant(0.0) : hl::DensitySpec::power_log(ua(rng), ub(rng), 1.0, uc(rng));
    const double g1 = i % 3 == 0 ? 0.0 : 0.1 * i, g2 = 0.0;
    const auto rep = hl::stability_pipeline(f1, f2, p, g1, g2, grid, cal);
    tightest = std::max(tightest, rep.measured / rep.bound);
    c.require(rep.measured <= rep.bound, "pair " + std::to_string(i));
    c.require(rep.comparison_margin >= -1e-12, "comparison pair " + std::to_string(i));
  }
  c.note("10 pairs, max measured/bound " + num(tightest, 4));
  const auto f = hl::DensitySpec::power_log(0.5, 1.0);
  const auto deg = hl::stability_pipeline(f, f, p, 0.375, 0.125, grid, cal);
  c.require(deg.bound == 0.25, "degenerate bound " + num(deg.bound, 17));
  c.note("degenerate bound " + num(deg.bound, 17));
}

// --- 11 ----------------------------------------------------------------

void dichotomy(Check& c) {
  for (auto [n, m] : {std::pair{2, 1}, {3, 2}}) {
    const hl::HessianParams p{n, m};
    const std::string tag = "(" + std::to_string(n) + "," + std::to_string(m) + ")";
    const auto b = hl::boundedness_probe(hl::DensitySpec::power_log(2.0 * m, 2.0 * m), p);
    const auto u = hl::boundedness_probe(hl::DensitySpec::power_log(2.0 * m, 0.5 * m), p);
    c.require(b.bounded, tag + " beta=2m bounded");
    c.require(!u.bounded && std::abs(u.rate - 0.5) <= 0.1, tag + " beta=m/2 rate " + num(u.rate));
    c.note(tag + " unbounded rate " + num(u.rate, 4));
  }
  struct Case {
    hl::DensitySpec f;
    hl::HessianParams p;
  };
  const std::vector<Case> cases = {
      {hl::DensitySpec::constant(1.0), {2, 1}},        {hl::DensitySpec::power_log(2.0, 2.0), {2, 1}},
      {hl::DensitySpec::power_log(2.0, 3.0), {2, 1}},  {hl::DensitySpec::power_log(1.0, 0.0), {2, 1}},
      {hl::DensitySpec::power_log(4.0, 4.0), {3, 2}},  {hl::DensitySpec::constant(2.0), {3, 1}},
      {hl::DensitySpec::power_log(2.0, 0.5), {2, 1}},  {hl::DensitySpec::power_log(4.0, 1.0), {3, 2}},
  };
  int bounded = 0;
  double worst = hl::numerics::kInf;
  for (const auto& cs : cases) {
    if (!hl::boundedness_probe(cs.f, cs.p).bounded) continue;
    ++bounded;
    const auto rec = hl::holder_chain_check(cs.f, cs.p);
    worst = std::min(worst, rec.margin);
    c.require(rec.margin >= -1e-8, "holder chain " + cs.f.describe());
  }
  c.note("holder chain on " + std::to_string(bounded) + " bounded instances, min margin " + num(worst, 3));
}

// --- 12 ----------------------------------------------------------------

void ackpz(Check& c) {
  for (int n : {2, 3}) {
    const auto rec = hl::ackpz_decay_check(10.0, hl::HessianParams{n, 1});
    c.require(rec.pass, "n=" + std::to_string(n));
    c.require(std::abs(rec.details.at("C_n") - std::pow(pi, n) / oracle::factorial(n)) <= 1e-12, "C_n");
    c.note("n=" + std::to_string(n) + " margin " + num(rec.margin, 3));
  }
}

struct Criterion {
  const char* name;
  double budget_s;
  void (*run)(Check&);
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"lambert-w residual and bounds", 1.0, lambert},
      {"power-log inverse roundtrip", 1.0, gpq_roundtrip},
      {"orlicz norms, sandwich, young, indicator and modular bounds", 30.0, orlicz},
      {"radial solver closed forms and roundtrip", 30.0, solver},
      {"mixed-measure inequality", 60.0, mixed},
      {"ball capacity vs mollified oracle", 120.0, capacity},
      {"volume-capacity on balls", 60.0, dk},
      {"energy-capacity margins", 60.0, energy_capacity},
      {"decay iteration and S_infinity", 30.0, decay_iteration},
      {"l-infinity stability bound", 120.0, stability},
      {"boundedness dichotomy and holder chain", 120.0, dichotomy},
      {"log-pole decay", 5.0, ackpz},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& cr = criteria[i];
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.require(secs < cr.budget_s, "runtime over budget");
    const bool ok = c.ok();
    failed += ok ? 0 : 1;
    std::printf("[%s] %2zu %s (%.2f s / %.0f s): %s\n", ok ? "PASS" : "FAIL", i + 1, cr.name, secs, cr.budget_s,
                c.text().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
