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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hessian_lab/orlicz.hpp"
#include "hessian_lab/special_fn.hpp"
#include "support/oracles.hpp"

namespace hl = hessian_lab;
using std::numbers::e;
using std::numbers::pi;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

// --- Lambert W ---------------------------------------------------------

TEST(LambertW0, FixedValues) {
  EXPECT_EQ(hl::lambert_w0(0.0), 0.0);
  EXPECT_NEAR(hl::lambert_w0(e), 1.0, 1e-15);
  // frozen from the bisection oracle
  EXPECT_NEAR(hl::lambert_w0(1.0), 0.5671432904, 1e-10);
  EXPECT_NEAR(hl::lambert_w0(1.0), oracle::lambert_w0(1.0), 1e-13);
}

TEST(LambertW0, RejectsNegativeAndNan) {
  EXPECT_THROW((void)hl::lambert_w0(-1e-3), hl::DomainError);
  EXPECT_THROW((void)hl::lambert_w0(std::nan("")), hl::DomainError);
}

TEST(LambertW0, MatchesOracleAcrossDecades) {
  for (double lx = -6.0; lx <= 6.0; lx += 0.25) {
    const double x = std::pow(10.0, lx);
    const double w = hl::lambert_w0(x);
    EXPECT_LE(std::abs(w * std::exp(w) - x), 1e-12 * std::max(1.0, x)) << x;
    EXPECT_NEAR(w, oracle::lambert_w0(x), 1e-12 * std::max(1.0, w)) << x;
  }
}

TEST(LambertW0, BoundPairsOnSweep) {
  const auto rows = hl::lambert_bounds_sweep(1e-6, 1e6, 1000);
  ASSERT_EQ(rows.size(), 1000u);
  for (const auto& r : rows) EXPECT_TRUE(r.pass) << r.x;
  // above e every pair is asserted and finite
  const auto upper = hl::lambert_bounds_sweep(e, 1e6, 1000);
  for (const auto& r : upper) {
    EXPECT_TRUE(std::isfinite(r.loglog_upper));
    EXPECT_GE(r.log_lower, -1e-11);
    EXPECT_GE(r.loglog_lower, -1e-11);
  }
}

TEST(LambertW0, UpperBoundMaxOneLog) {
  for (int i = 0; i <= 400; ++i) {
    const double x = 1e6 * i / 400.0;
    EXPECT_LE(hl::lambert_w0(x), std::max(1.0, std::log(x)) + 1e-12);
  }
}

TEST(LambertW0, DerivativeIdentity) {
  for (double lx = -1.0; lx <= 3.0; lx += 0.2) {
    const double x = std::pow(10.0, lx);
    const double h = 1e-5 * x;
    const double fd = (hl::lambert_w0(x + h) - hl::lambert_w0(x - h)) / (2.0 * h);
    const double w = hl::lambert_w0(x);
    EXPECT_LE(rel(fd, w / (x * (1.0 + w))), 1e-6) << x;
  }
}

TEST(LambertW0, LogArgumentBeyondOverflow) {
  const double w = hl::lambert_w0_log(1000.0);
  EXPECT_NEAR(w + std::log(w), 1000.0, 1e-10);
  EXPECT_NEAR(hl::lambert_w0_log(0.0), hl::lambert_w0(1.0), 1e-15);
}

// --- power-log profiles ------------------------------------------------

TEST(PowerLogProfile, Eval) {
  EXPECT_NEAR(hl::g_pq_eval(1.0 / e, {-1.0, 1.0}), 1.0 / e, 1e-15);
  EXPECT_NEAR(hl::g_pq_eval(0.5, {-1.0, 1.0}), 0.7213475, 1e-7);
  EXPECT_NEAR(hl::g_pq_eval(1.0 / e, {-2.0, 2.0}), 0.1353353, 1e-7);
  EXPECT_THROW((void)hl::g_pq_eval(1.0, {-1.0, 1.0}), hl::DomainError);
  EXPECT_THROW((void)hl::g_pq_eval(0.5, {-1.0, 0.0}), hl::DomainError);
}

TEST(PowerLogProfile, Inverse) {
  EXPECT_NEAR(hl::g_pq_inverse(1.0 / e, {-1.0, 1.0}), 1.0 / e, 1e-14);
  EXPECT_NEAR(hl::g_pq_inverse(0.7213475, {-1.0, 1.0}), 0.5, 1e-7);
  EXPECT_THROW((void)hl::g_pq_inverse(1.0, {1.0, 1.0}), hl::DomainError);
  EXPECT_THROW((void)hl::g_pq_inverse(0.0, {-1.0, 1.0}), hl::RangeError);
  // monotone and tends to 0 with s
  double prev = 1.0;
  for (double ls = 2.0; ls >= -40.0; ls -= 1.0) {
    const double t = hl::g_pq_inverse(std::exp(ls), {-1.0, 1.0});
    EXPECT_LT(t, prev);
    prev = t;
  }
  EXPECT_LT(prev, 1e-12);
}

TEST(PowerLogProfile, RoundtripGrid) {
  for (double p : {-0.5, -1.0, -2.0, -3.0})
    for (double q : {0.25, 0.5, 1.0, 2.0}) {
      const hl::PowerLogProfile prof{p, q};
      for (int i = 1; i < 50; ++i) {
        const double t = i / 50.0;
        EXPECT_LE(rel(hl::g_pq_inverse(hl::g_pq_eval(t, prof), prof), t), 1e-9) << p << " " << q << " " << t;
      }
      // full range in depth space, where t = e^{-L} need not be representable
      for (double ls = -8.0; ls <= 8.0; ls += 0.5) {
        const double s = std::pow(10.0, ls);
        EXPECT_LE(rel(hl::g_pq_eval_log(hl::g_pq_inverse_log(s, prof), prof), s), 1e-12) << p << " " << q << " " << s;
      }
    }
}

TEST(ProofProfiles, Values) {
  const hl::ProofProfiles pp{2, 0.25};
  EXPECT_NEAR(pp.f(1.0 / e), e, 1e-14);
  EXPECT_NEAR(pp.phi(0.0), std::exp(3.0), 1e-12);
  EXPECT_THROW((void)pp.f(0.0), hl::DomainError);
  EXPECT_THROW((hl::ProofProfiles{2, 0.6}.validate()), hl::DomainError);
  EXPECT_NEAR(pp.phi_inverse_from_log(pp.log_phi(3.7)), 3.7, 1e-12);
}

TEST(ProofProfiles, PhiConvex) {
  for (int n : {2, 3, 4})
    for (double eps : {0.05, 0.2, (n + 1.0) / (3.0 * n)}) {
      const hl::ProofProfiles pp{n, eps};
      const double h = 0.05;
      for (int i = 1; i < 200; ++i) {
        const double t = i * h;
        const double d2 = pp.phi(t + h) - 2.0 * pp.phi(t) + pp.phi(t - h);
        EXPECT_GE(d2 / std::max(1.0, pp.phi(t)), -1e-10) << n << " " << eps << " " << t;
      }
    }
}

TEST(GAlphaNm, InverseMatchesBisectionOracle) {
  const hl::HessianParams p{2, 1, 0.1, 5.0};
  const double t = hl::g_alpha_nm_inverse(10.0, p);
  EXPECT_LE(rel(hl::g_alpha_nm(t, p), 10.0), 1e-9);
  const double t_oracle = oracle::bisect([&](double x) { return hl::g_alpha_nm(x, p) - 10.0; }, 0.0, 100.0);
  EXPECT_LE(rel(t, t_oracle), 1e-9);
  for (double ls = -10.0; ls <= 10.0; ls += 0.5) {
    const double s = std::pow(10.0, ls);
    EXPECT_LE(rel(hl::g_alpha_nm(hl::g_alpha_nm_inverse(s, p), p), s), 1e-9) << s;
  }
  EXPECT_EQ(hl::g_alpha_nm_inverse(0.0, p), 0.0);
}

TEST(GAlphaNm, DerivativeMatchesDifferences) {
  const hl::HessianParams p{3, 2, 0.1, 7.0};
  for (double t : {0.1, 0.5, 1.0, 4.0, 30.0}) {
    const double h = 1e-6 * t;
    const double fd = (hl::g_alpha_nm(t + h, p) - hl::g_alpha_nm(t - h, p)) / (2.0 * h);
    EXPECT_LE(rel(hl::g_alpha_nm_derivative(t, p), fd), 1e-6) << t;
  }
}

// --- Orlicz generators -------------------------------------------------

namespace {

hl::OrliczGenerator square() {
  return hl::OrliczGenerator::general(
      "t^2", [](double t) { return t * t; }, [](double t) { return 2.0 * t; }, 2, [](double) { return 2.0; });
}

}  // namespace

TEST(OrliczGenerator, ConjugateValues) {
  const auto sq = square();
  EXPECT_NEAR(sq.conjugate(2.0), 1.0, 1e-12);
  EXPECT_EQ(sq.conjugate(0.0), 0.0);
  const auto par = hl::OrliczGenerator::parametric(2, 1, 3.0);
  EXPECT_EQ(par.conjugate(0.0), 0.0);
  const double ref = oracle::conjugate_grid([&](double t) { return par(t); }, 5.0, 1e3);
  EXPECT_LE(rel(par.conjugate(5.0), ref), 1e-6);
  EXPECT_NEAR(par.conjugate(5.0), 3.70054386, 1e-7);
}

TEST(OrliczGenerator, Biconjugation) {
  const auto par = hl::OrliczGenerator::parametric(2, 1, 5.0);
  const auto conj = par.conjugate_generator();
  for (double t : {0.1, 1.0, 10.0}) {
    // (phi*)*(t) = sup_s (s t - phi*(s)) attained at s = phi'(t)
    const double s_star = par.derivative(t);
    const double bi = oracle::conjugate_grid([&](double s) { return conj(s); }, t, 4.0 * s_star, 20000);
    EXPECT_LE(rel(bi, par(t)), 1e-6) << t;
  }
}

TEST(OrliczGenerator, YoungGrid) {
  for (const auto& g : {square(), hl::OrliczGenerator::parametric(2, 1, 5.0), hl::OrliczGenerator::power(3.0, 3),
                        hl::OrliczGenerator::parametric(3, 2, 7.0)}) {
    const auto rec = hl::young_check(g, 100);
    EXPECT_TRUE(rec.pass) << g.describe() << " margin " << rec.margin;
  }
}

TEST(OrliczGenerator, ParseSpecStrings) {
  EXPECT_EQ(hl::OrliczGenerator::parse("phi=param:n=2,m=1,alpha=5").describe(), "param:n=2,m=1,alpha=5");
  EXPECT_EQ(hl::OrliczGenerator::parse("power:2").form(), hl::OrliczGenerator::Form::kPower);
  EXPECT_THROW((void)hl::OrliczGenerator::parse("param:n=2,m=1"), hl::DomainError);
  EXPECT_THROW((void)hl::OrliczGenerator::parse("cubic:3"), hl::DomainError);
  EXPECT_THROW((void)hl::OrliczGenerator::power(1.0), hl::DomainError);
}

TEST(OrliczGenerator, Admissible) {
  EXPECT_TRUE(hl::OrliczGenerator::parametric(2, 1, 5.0).admissibility().pass);
  EXPECT_TRUE(hl::OrliczGenerator::power(2.0).admissibility().pass);
}

// --- modulars and norms ------------------------------------------------

namespace {

const hl::RadialGrid& coarse_grid() {
  static const auto g = hl::RadialGrid::graded(1e-8, 1.05, 0.1, 2000);
  return g;
}

hl::RadialFunction ball_indicator(double r) { return hl::RadialFunction::indicator(r, coarse_grid().with_nodes({r})); }

}  // namespace

TEST(Modular, Values) {
  const auto sq = hl::OrliczGenerator::power(2.0, 2);
  EXPECT_NEAR(hl::modular(sq, hl::RadialFunction::constant(1.0, coarse_grid())), pi * pi / 2.0, 1e-10);
  EXPECT_EQ(hl::modular(sq, hl::RadialFunction::constant(0.0, coarse_grid())), 0.0);
  EXPECT_NEAR(hl::modular(sq, ball_indicator(0.5)), pi * pi / 32.0, 1e-10);
  // analytic density with a singular tail
  const auto f = hl::DensitySpec::power_log(1.0, 0.0);
  const double ref = oracle::ball_integral(2, [](double r) { return r > 0.0 ? 1.0 / (r * r) : 0.0; }, {}, 4000);
  EXPECT_LE(rel(hl::modular(sq, f), ref), 1e-6);
}

TEST(Modular, DivergentTailRaises) {
  const auto sq = hl::OrliczGenerator::power(2.0, 2);
  // (rho^{-2})^2 rho^3 = rho^{-1} is not integrable at 0
  EXPECT_THROW((void)hl::modular(sq, hl::DensitySpec::power_log(2.0, 0.0)), hl::DivergenceError);
}

TEST(Luxemburg, IndicatorAndHomogeneity) {
  const auto sq = hl::OrliczGenerator::power(2.0, 2);
  const auto chi = ball_indicator(0.5);
  const double lux = hl::luxemburg_norm(sq, chi);
  EXPECT_NEAR(lux, std::sqrt(pi * pi / 32.0), 1e-9);
  EXPECT_NEAR(lux, 0.55536, 1e-5);
  EXPECT_NEAR(hl::luxemburg_norm(sq, chi.scaled(2.0)), 2.0 * lux, 1e-9);
  EXPECT_EQ(hl::luxemburg_norm(sq, hl::RadialFunction::constant(0.0, coarse_grid())), 0.0);
  // bisection oracle on the modular itself
  const double o = oracle::luxemburg(2, [](double t) { return t * t; }, [](double r) { return r < 0.5 ? 1.0 : 0.0; },
                                     {0.5});
  EXPECT_LE(rel(lux, o), 1e-6);
}

TEST(Luxemburg, UnitModular) {
  const auto par = hl::OrliczGenerator::parametric(2, 1, 5.0);
  for (const auto& f : {hl::DensitySpec::constant(1.0), hl::DensitySpec::power_log(0.5, 1.0),
                        hl::DensitySpec::power_log(-1.0, 0.0, 1.0, 3.0)}) {
    const auto s = f.sample(coarse_grid());
    const double lux = hl::luxemburg_norm(par, s);
    EXPECT_NEAR(hl::modular(par, s.scaled(1.0 / lux)), 1.0, 1e-6) << f.describe();
  }
}

TEST(OrliczNorm, IndicatorClosedForm) {
  const auto sq = square();
  const auto r = hl::indicator_norms(sq, 0.25);
  EXPECT_NEAR(r.luxemburg, 0.5, 1e-9);
  EXPECT_NEAR(r.orlicz, 1.0, 1e-8);
  EXPECT_NEAR(r.orlicz / r.luxemburg, 2.0, 1e-8);
  EXPECT_NEAR(hl::indicator_norms(sq, 1e-10).luxemburg, 1e-5, 1e-12);
  EXPECT_THROW((void)hl::indicator_norms(sq, 0.0), hl::DomainError);
  EXPECT_THROW((void)hl::indicator_norms(sq, 10.0), hl::DomainError);
}

TEST(OrliczNorm, IndicatorsAgreeWithGenericNorms) {
  for (const auto& g : {hl::OrliczGenerator::power(2.0, 2), hl::OrliczGenerator::parametric(2, 1, 5.0)}) {
    for (double r : {0.25, 0.5, 0.9, 1.0}) {
      const auto chi = r < 1.0 ? ball_indicator(r) : hl::RadialFunction::constant(1.0, coarse_grid());
      const double V = hl::HessianParams{2, 1}.ball_volume(r);
      const auto closed = hl::indicator_norms(g, V);
      const auto generic = hl::norms(g, chi);
      EXPECT_LE(rel(generic.luxemburg, closed.luxemburg), 1e-6) << g.describe() << " r=" << r;
      EXPECT_LE(rel(generic.orlicz, closed.orlicz), 1e-6) << g.describe() << " r=" << r;
    }
  }
}

TEST(OrliczNorm, InfimumMatchesGridOracle) {
  const auto par = hl::OrliczGenerator::parametric(2, 1, 5.0);
  auto phi = [&](double t) { return par(t); };
  auto f = [](double r) { return 1.0 + std::cos(3.0 * r); };
  const auto s = hl::RadialFunction::sample(f, hl::RadialGrid::uniform(2000), hl::RadialKind::kDensity);
  EXPECT_LE(rel(hl::orlicz_norm(par, s), oracle::orlicz(2, phi, f, {})), 1e-6);
}

TEST(OrliczNorm, SandwichOnRandomDensities) {
  std::mt19937_64 rng(20260101);
  std::uniform_real_distribution<double> ua(-1.0, 0.9), ub(-1.0, 3.0), uc(0.1, 5.0);
  const auto par = hl::OrliczGenerator::parametric(2, 1, 5.0);
  const auto sq = hl::OrliczGenerator::power(2.0, 2);
  for (int i = 0; i < 30; ++i) {
    const auto f = hl::DensitySpec::power_log(ua(rng), ub(rng), 1.0, uc(rng)).sample(coarse_grid());
    for (const auto* g : {&par, &sq}) {
      const auto r = hl::norms(*g, f);
      EXPECT_LE(r.luxemburg, r.orlicz * (1.0 + 1e-9)) << i;
      EXPECT_LE(r.orlicz, 2.0 * r.luxemburg * (1.0 + 1e-9)) << i;
    }
  }
}

TEST(HolderYoung, WorkedIndicatorInstance) {
  const auto sq = hl::OrliczGenerator::power(2.0, 2);
  const auto grid = coarse_grid().with_nodes({0.5});
  const auto f = hl::RadialFunction::constant(1.0, grid);
  const auto chi = hl::RadialFunction::indicator(0.5, grid);
  const auto rec = hl::holder_young_check(sq, f, chi, 0.5);
  ASSERT_TRUE(rec.indicator_bound.has_value());
  EXPECT_NEAR(rec.indicator_bound->details.at("lhs"), pi * pi / 32.0, 1e-9);
  const double V = pi * pi / 32.0;
  const double rhs = (pi / std::sqrt(2.0)) * V * std::sqrt(1.0 / V);
  EXPECT_NEAR(rec.indicator_bound->details.at("rhs"), rhs, 1e-8);
  EXPECT_NEAR(rhs, pi * pi / 8.0, 1e-14);
  EXPECT_TRUE(rec.pass());
  EXPECT_GT(rec.indicator_bound->margin, 0.0);
}

TEST(HolderYoung, ZeroFunction) {
  const auto sq = hl::OrliczGenerator::power(2.0, 2);
  const auto z = hl::RadialFunction::constant(0.0, coarse_grid());
  const auto g = hl::RadialFunction::constant(1.0, coarse_grid());
  const auto rec = hl::holder_young_check(sq, z, g, 0.5);
  EXPECT_TRUE(rec.pass());
  EXPECT_NEAR(rec.holder.margin, rec.holder.details.at("rhs"), 1e-15);
  EXPECT_NEAR(rec.modular_bound.margin, 1.0, 1e-15);
}

TEST(HolderYoung, RandomPairs) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ua(-1.0, 0.5), ub(0.0, 2.0), uc(0.1, 3.0);
  const auto par = hl::OrliczGenerator::parametric(2, 1, 5.0);
  const auto grid = hl::RadialGrid::graded(1e-6, 1.1, 0.1, 400);
  for (int i = 0; i < 10; ++i) {
    const auto f = hl::DensitySpec::power_log(ua(rng), ub(rng), 1.0, uc(rng)).sample(grid);
    const auto g = hl::DensitySpec::power_log(ua(rng), ub(rng), 1.0, uc(rng)).sample(grid);
    const auto rec = hl::holder_young_check(par, f, g, 0.4);
    EXPECT_TRUE(rec.pass()) << i << " holder " << rec.holder.margin << " modular_bound " << rec.modular_bound.margin;
  }
}
