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

// Command-line front end. Exit status: 0 when every checked margin passes,
// 2 when an inequality is violated beyond tolerance, 1 on usage or domain
// errors. Reports go to --out as CSV (17 significant digits) and JSON
// (sorted keys).

#include <cstdio>
#include <filesystem>
#include <functional>
#include <future>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hessian_lab/hessian_lab.hpp"

namespace fs = std::filesystem;
using hessian_lab::CsvTable;
using hessian_lab::json_number;
using nlohmann::json;

namespace {

constexpr int kPass = 0;
constexpr int kUsage = 1;
constexpr int kViolation = 2;

struct Common {
  std::string out = ".";
  std::size_t grid = 10000;
  double cutoff = 1e-8;
  std::uint64_t seed = 20260101;
  int jobs = 1;

  [[nodiscard]] hessian_lab::RadialGrid radial_grid() const {
    return hessian_lab::RadialGrid::graded(cutoff, 1.05, 0.1, grid);
  }
  [[nodiscard]] fs::path path(const std::string& name) const { return fs::path(out) / name; }
};

struct ParamFlags {
  int n = 2;
  int m = 1;
  double eps = 0.1;
  double alpha = 5.0;

  [[nodiscard]] hessian_lab::HessianParams params() const {
    hessian_lab::HessianParams p{n, m, eps, alpha};
    p.validate();
    return p;
  }
};

void add_params(CLI::App* app, ParamFlags& p) {
  app->add_option("--n", p.n, "complex dimension");
  app->add_option("--m", p.m, "Hessian order");
  app->add_option("--eps", p.eps, "epsilon");
  app->add_option("--alpha", p.alpha, "Orlicz log exponent");
}

/// Runs `fn(i)` for i in [0, count) on up to `jobs` threads and returns the
/// results in index order.
template <class T>
std::vector<T> parallel_map(int count, int jobs, const std::function<T(int)>& fn) {
  std::vector<T> out(static_cast<std::size_t>(count));
  if (jobs <= 1) {
    for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = fn(i);
    return out;
  }
  for (int start = 0; start < count; start += jobs) {
    std::vector<std::future<T>> batch;
    for (int i = start; i < std::min(count, start + jobs); ++i) batch.push_back(std::async(std::launch::async, fn, i));
    for (std::size_t k = 0; k < batch.size(); ++k) out[static_cast<std::size_t>(start) + k] = batch[k].get();
  }
  return out;
}

/// Random power-log density rho^{-a} (A - log rho)^{-b} with a bounded
/// below the integrability threshold.
hessian_lab::DensitySpec random_power_log(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> ua(-1.0, 0.5 * n), ub(0.0, 3.0), uA(1.0, 3.0), uc(0.5, 2.0);
  return hessian_lab::DensitySpec::power_log(ua(rng), ub(rng), uA(rng), uc(rng));
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) v.push_back(std::stod(item));
  }
  return v;
}

json record_json(const hessian_lab::VerificationRecord& r) { return hessian_lab::to_json(r); }

int verdict(bool pass) { return pass ? kPass : kViolation; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hessian-lab: radial complex Hessian equations, Orlicz norms, capacities and iteration bounds"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--out", common.out, "output directory");
  app.add_option("--grid", common.grid, "uniform cells on [0.1, 1] of the radial grid");
  app.add_option("--cutoff", common.cutoff, "innermost positive grid radius");
  app.add_option("--seed", common.seed, "seed for randomized sweeps");
  app.add_option("--jobs", common.jobs, "worker threads for sweeps");

  std::function<int()> action;
  auto bind = [&](CLI::App* sub, std::function<int()> fn) { sub->callback([&action, fn] { action = fn; }); };

  // lambert
  auto* lambert = app.add_subcommand("lambert", "Lambert W0");
  lambert->require_subcommand(1);
  double lx = 1.0;
  auto* lambert_eval = lambert->add_subcommand("eval", "evaluate W0(x)");
  lambert_eval->add_option("--x", lx, "argument")->required();
  bind(lambert_eval, [&] {
    const double w = hessian_lab::lambert_w0(lx);
    json j{{"x", json_number(lx)}, {"w", json_number(w)}, {"residual", json_number(std::abs(w * std::exp(w) - lx))}};
    hessian_lab::write_json(common.path("lambert-eval.json"), j);
    std::printf("%s\n", hessian_lab::format_double(w).c_str());
    return kPass;
  });
  double x_min = 1e-6, x_max = 1e6;
  int lambert_points = 1000;
  auto* lambert_check = lambert->add_subcommand("check", "residual and elementary bounds on a log sweep");
  lambert_check->add_option("--x-min", x_min, "smallest argument");
  lambert_check->add_option("--x-max", x_max, "largest argument");
  lambert_check->add_option("--points", lambert_points, "sample count");
  bind(lambert_check, [&] {
    const auto rows = hessian_lab::lambert_bounds_sweep(x_min, x_max, lambert_points);
    CsvTable t({"x", "w", "residual", "estl_margin", "log_lower", "log_upper", "loglog_lower", "loglog_upper", "pass"});
    bool ok = true;
    for (const auto& r : rows) {
      t.add_row({r.x, r.w, r.residual, r.estl_margin, r.log_lower, r.log_upper, r.loglog_lower, r.loglog_upper,
                 static_cast<long long>(r.pass)});
      ok = ok && r.pass;
    }
    t.write(common.path("bounds-report.csv"));
    std::printf("%zu points, %s\n", rows.size(), ok ? "all bounds hold" : "violations found");
    return verdict(ok);
  });

  // orlicz
  auto* orlicz = app.add_subcommand("orlicz", "Orlicz norms and conjugates");
  orlicz->require_subcommand(1);
  std::string phi = "param:n=2,m=1,alpha=5", fspec = "const:1", gspec;
  int phi_n = 2;
  double s_value = 1.0, indicator = -1.0;
  auto add_phi = [&](CLI::App* sub) {
    sub->add_option("--phi", phi, "generator: param:n=..,m=..,alpha=.. or power:p");
    sub->add_option("--dim", phi_n, "complex dimension of the ball for power generators");
  };
  auto* orlicz_norm_cmd = orlicz->add_subcommand("norm", "Luxemburg and Orlicz norms of a density");
  add_phi(orlicz_norm_cmd);
  orlicz_norm_cmd->add_option("--f", fspec, "density spec");
  bind(orlicz_norm_cmd, [&] {
    const auto gen = hessian_lab::OrliczGenerator::parse(phi, phi_n);
    const auto f = hessian_lab::DensitySpec::parse(fspec).sample(common.radial_grid());
    const auto r = hessian_lab::norms(gen, f);
    const bool ok = r.luxemburg <= r.orlicz * (1 + 1e-9) && r.orlicz <= 2.0 * r.luxemburg * (1 + 1e-9);
    json j{{"generator", gen.describe()}, {"density", fspec}, {"luxemburg", json_number(r.luxemburg)},
           {"orlicz", json_number(r.orlicz)}, {"modular", json_number(r.modular)}, {"sandwich_ok", ok}};
    hessian_lab::write_json(common.path("orlicz-norm.json"), j);
    std::printf("luxemburg %s orlicz %s\n", hessian_lab::format_double(r.luxemburg).c_str(),
                hessian_lab::format_double(r.orlicz).c_str());
    return verdict(ok);
  });
  auto* orlicz_conj = orlicz->add_subcommand("conjugate", "complementary function phi*(s)");
  add_phi(orlicz_conj);
  orlicz_conj->add_option("--s", s_value, "argument")->required();
  bind(orlicz_conj, [&] {
    const auto gen = hessian_lab::OrliczGenerator::parse(phi, phi_n);
    const double v = gen.conjugate(s_value);
    hessian_lab::write_json(common.path("orlicz-conjugate.json"),
                            json{{"generator", gen.describe()}, {"s", json_number(s_value)}, {"value", json_number(v)}});
    std::printf("%s\n", hessian_lab::format_double(v).c_str());
    return kPass;
  });
  auto* orlicz_check = orlicz->add_subcommand("check", "Young, Holder and indicator bounds");
  add_phi(orlicz_check);
  orlicz_check->add_option("--f", fspec, "density spec");
  orlicz_check->add_option("--g", gspec, "second density spec (defaults to the indicator)");
  orlicz_check->add_option("--indicator", indicator, "radius of the indicator used for the set bound");
  bind(orlicz_check, [&] {
    const auto gen = hessian_lab::OrliczGenerator::parse(phi, phi_n);
    const auto grid = common.radial_grid();
    const double radius = indicator > 0.0 ? indicator : 0.5;
    const auto f = hessian_lab::DensitySpec::parse(fspec).sample(grid);
    const auto g = gspec.empty() ? hessian_lab::RadialFunction::indicator(radius, grid)
                                 : hessian_lab::DensitySpec::parse(gspec).sample(grid);
    const auto rec = hessian_lab::holder_young_check(
        gen, f, g, gspec.empty() ? std::optional<double>(radius) : std::nullopt);
    json j{{"generator", gen.describe()}, {"young", record_json(rec.young)}, {"holder", record_json(rec.holder)}};
    if (rec.indicator_bound) j["indicator_bound"] = record_json(*rec.indicator_bound);
    j["modular_bound"] = record_json(rec.modular_bound);
    j["pass"] = rec.pass();
    hessian_lab::write_json(common.path("orlicz-check.json"), j);
    std::printf("%s\n", rec.pass() ? "pass" : "violation");
    return verdict(rec.pass());
  });

  // solve / density-roundtrip
  ParamFlags pf;
  auto* solve = app.add_subcommand("solve", "radial solution U_m of H_m(u) = f dV, u = 0 on the sphere");
  add_params(solve, pf);
  solve->add_option("--f", fspec, "density spec");
  bind(solve, [&] {
    const auto p = pf.params();
    const auto f = hessian_lab::DensitySpec::parse(fspec);
    const auto grid = common.radial_grid();
    const auto u = hessian_lab::solve_hessian(f, p, grid);
    CsvTable t({"rho", "u", "du"});
    for (std::size_t i = 0; i < u.size(); ++i) t.add_row({u.radii()[i], u.values()[i], u.slopes()[i]});
    t.write(common.path("potential.csv"));
    const double e = hessian_lab::energy_mm(u, f.sample(grid), p);
    hessian_lab::write_json(common.path("solve-summary.json"),
                            json{{"density", f.describe()}, {"u0", json_number(u.values()[0])},
                                 {"energy", json_number(e)}, {"n", p.n}, {"m", p.m}});
    std::printf("u(0) = %s\n", hessian_lab::format_double(u.values()[0]).c_str());
    return kPass;
  });
  double roundtrip_tol = 1e-4;
  auto* roundtrip = app.add_subcommand("density-roundtrip", "solve then recover the density");
  add_params(roundtrip, pf);
  roundtrip->add_option("--f", fspec, "density spec");
  roundtrip->add_option("--tol", roundtrip_tol, "relative L1 tolerance");
  bind(roundtrip, [&] {
    const auto p = pf.params();
    const auto r = hessian_lab::density_roundtrip(hessian_lab::DensitySpec::parse(fspec), p, common.radial_grid());
    CsvTable t({"rho", "f", "recovered"});
    for (std::size_t i = 0; i < r.density.size(); ++i)
      t.add_row({r.density.radii()[i], r.density.values()[i], r.recovered.values()[i]});
    t.write(common.path("roundtrip.csv"));
    const bool ok = r.rel_l1_error <= roundtrip_tol;
    hessian_lab::write_json(common.path("roundtrip-summary.json"),
                            json{{"rel_l1_error", json_number(r.rel_l1_error)}, {"tolerance", roundtrip_tol}, {"pass", ok}});
    std::printf("relative L1 error %s\n", hessian_lab::format_double(r.rel_l1_error).c_str());
    return verdict(ok);
  });

  // capacity
  auto* capacity = app.add_subcommand("capacity", "Hessian capacities");
  capacity->require_subcommand(1);
  double radius = 0.5;
  auto* cap_ball = capacity->add_subcommand("ball", "cap_m(B(0, r)) in the unit ball");
  add_params(cap_ball, pf);
  cap_ball->add_option("--r", radius, "ball radius")->required();
  bind(cap_ball, [&] {
    const auto p = pf.params();
    const double c = hessian_lab::ball_capacity(radius, p);
    hessian_lab::write_json(common.path("capacity-ball.json"),
                            json{{"n", p.n}, {"m", p.m}, {"r", json_number(radius)}, {"capacity", json_number(c)}});
    std::printf("%s\n", hessian_lab::format_double(c).c_str());
    return kPass;
  });
  int s_points = 200;
  auto* cap_profile = capacity->add_subcommand("profile", "h(s) = cap_m({u < -s})^{1/m} for U_m(f)");
  add_params(cap_profile, pf);
  cap_profile->add_option("--f", fspec, "density spec");
  cap_profile->add_option("--s-points", s_points, "number of levels");
  bind(cap_profile, [&] {
    const auto p = pf.params();
    const auto u = hessian_lab::solve_hessian(hessian_lab::DensitySpec::parse(fspec), p, common.radial_grid());
    const auto h = hessian_lab::sublevel_capacity_profile(u, hessian_lab::potential_s_grid(u, s_points), p);
    CsvTable t({"s", "radius", "volume", "h"});
    for (std::size_t i = 0; i < h.s_grid().size(); ++i)
      t.add_row({h.s_grid()[i], h.radii()[i], h.volumes()[i], h.h_values()[i]});
    t.write(common.path("capacity-profile.csv"));
    std::printf("%zu levels, nonincreasing: %s\n", h.s_grid().size(), h.nonincreasing() ? "yes" : "no");
    return verdict(h.nonincreasing());
  });

  // verify
  auto* verify = app.add_subcommand("verify", "inequality checks");
  verify->require_subcommand(1);
  double r_min = 1e-3, r_max = 0.5;
  int steps = 40;
  auto* vdk = verify->add_subcommand("dk", "volume-capacity estimate on balls");
  add_params(vdk, pf);
  vdk->add_option("--r-min", r_min, "smallest radius");
  vdk->add_option("--r-max", r_max, "largest radius");
  vdk->add_option("--steps", steps, "number of radii");
  bind(vdk, [&] {
    const auto p = pf.params();
    const auto rep = hessian_lab::dk_verify(p, r_min, r_max, steps);
    CsvTable t({"r", "volume", "capacity", "dk_rhs", "corollary_rhs", "margin"});
    for (const auto& r : rep.rows) t.add_row({r.r, r.volume, r.capacity, r.dk_rhs, r.corollary_rhs, r.margin});
    t.write(common.path("dk-report.csv"));
    json j{{"C1", json_number(rep.C1)},
           {"C2", json_number(rep.C2)},
           {"D1", json_number(rep.D1)},
           {"D2", json_number(rep.D2)},
           {"exponent", json_number(rep.exponent)},
           {"slope", json_number(rep.slope)},
           {"slope_full", json_number(rep.slope_full)},
           {"slope_r_max", json_number(rep.slope_r_max)},
           {"expected_slope", json_number(rep.expected_slope)},
           {"all_rows_hold", rep.all_rows_hold()},
           {"skipped_rows", rep.skipped_rows}};
    hessian_lab::write_json(common.path("summary.json"), j);
    std::printf("slope %s (expected %s), rows %s\n", hessian_lab::format_double(rep.slope).c_str(),
                hessian_lab::format_double(rep.expected_slope).c_str(), rep.all_rows_hold() ? "hold" : "violated");
    return verdict(rep.all_rows_hold());
  });
  std::string hspec = "const:1";
  int random_count = 0;
  auto* vmixed = verify->add_subcommand("mixed", "H_m(U_n) >= h^{m/n} for (dd^c U_n)^n = h dV");
  add_params(vmixed, pf);
  vmixed->add_option("--f", hspec, "density h of the complex Monge-Ampere problem");
  vmixed->add_option("--random", random_count, "additionally sweep this many random power-log densities");
  bind(vmixed, [&] {
    const auto p = pf.params();
    const auto grid = common.radial_grid();
    std::vector<hessian_lab::DensitySpec> specs{hessian_lab::DensitySpec::parse(hspec)};
    std::mt19937_64 rng(common.seed);
    for (int i = 0; i < random_count; ++i) specs.push_back(random_power_log(rng, p.n));
    const auto recs = parallel_map<hessian_lab::VerificationRecord>(
        static_cast<int>(specs.size()), common.jobs,
        [&](int i) { return hessian_lab::mixed_measure_check(specs[static_cast<std::size_t>(i)], p, grid); });
    CsvTable t({"density", "margin", "scale", "min_ratio", "pass"});
    bool ok = true;
    for (std::size_t i = 0; i < recs.size(); ++i) {
      t.add_row({specs[i].describe(), recs[i].margin, recs[i].scale, recs[i].details.at("min_ratio"),
                 static_cast<long long>(recs[i].pass)});
      ok = ok && recs[i].pass;
    }
    t.write(common.path("mixed-report.csv"));
    hessian_lab::write_json(common.path("mixed.json"), record_json(recs.front()));
    std::printf("%zu densities, %s\n", recs.size(), ok ? "pass" : "violation");
    return verdict(ok);
  });
  int t_points = 20;
  auto* vec = verify->add_subcommand("energy-cap", "t^m cap({u<-s-t}) <= mu({u<-s}) <= t^{-m} e_{m,m}(u)");
  add_params(vec, pf);
  vec->add_option("--f", fspec, "density spec");
  vec->add_option("--s-points", s_points, "levels s");
  vec->add_option("--t-points", t_points, "increments t");
  bind(vec, [&] {
    const auto p = pf.params();
    const auto grid = common.radial_grid();
    const auto f = hessian_lab::DensitySpec::parse(fspec);
    const auto u = hessian_lab::solve_hessian(f, p, grid);
    const double sup = -u.values()[0];
    std::vector<double> s, t;
    for (int i = 1; i <= s_points; ++i) s.push_back(sup * i / (s_points + 1.0));
    for (int i = 1; i <= t_points; ++i) t.push_back(sup * i / (t_points + 1.0));
    const auto rec = hessian_lab::energy_capacity_check(u, f.sample(grid), p, s, t);
    hessian_lab::write_json(common.path("energy-cap.json"), record_json(rec));
    std::printf("%s\n", rec.pass ? "pass" : "violation");
    return verdict(rec.pass);
  });
  double s_max = 10.0;
  auto* vackpz = verify->add_subcommand("ackpz", "sublevel volumes of the log pole");
  add_params(vackpz, pf);
  vackpz->add_option("--s-max", s_max, "largest level");
  bind(vackpz, [&] {
    const auto rec = hessian_lab::ackpz_decay_check(s_max, pf.params());
    hessian_lab::write_json(common.path("ackpz.json"), record_json(rec));
    std::printf("%s\n", rec.pass ? "pass" : "violation");
    return verdict(rec.pass);
  });
  auto* vholder = verify->add_subcommand("holder-chain", "-U_n <= D (-U_m)^{m^2/n^2} (1 - rho^{2-2m/n})^{1-m^2/n^2}");
  add_params(vholder, pf);
  vholder->add_option("--f", fspec, "density spec");
  bind(vholder, [&] {
    const auto rec = hessian_lab::holder_chain_check(hessian_lab::DensitySpec::parse(fspec), pf.params(),
                                                     common.radial_grid());
    hessian_lab::write_json(common.path("holder-chain.json"), record_json(rec));
    std::printf("%s\n", rec.pass ? "pass" : "violation");
    return verdict(rec.pass);
  });

  // probe
  auto* probe = app.add_subcommand("probe", "numerical probes");
  probe->require_subcommand(1);
  std::string log_cutoffs;
  auto* pb = probe->add_subcommand("boundedness", "sup |U_m| under shrinking inner cutoffs");
  add_params(pb, pf);
  pb->add_option("--f", fspec, "density spec");
  pb->add_option("--log-cutoffs", log_cutoffs, "comma-separated depths -log(rho)");
  bind(pb, [&] {
    const auto p = pf.params();
    const auto f = hessian_lab::DensitySpec::parse(fspec);
    std::vector<hessian_lab::Cutoff> cutoffs;
    if (log_cutoffs.empty()) cutoffs = hessian_lab::default_cutoffs();
    else
      for (double d : parse_list(log_cutoffs)) cutoffs.push_back(hessian_lab::Cutoff::from_log(d));
    const auto r = hessian_lab::boundedness_probe(f, p, cutoffs, common.radial_grid());
    CsvTable t({"depth", "value"});
    for (std::size_t i = 0; i < r.depths.size(); ++i) t.add_row({r.depths[i], r.values[i]});
    t.write(common.path("boundedness.csv"));
    hessian_lab::write_json(common.path("boundedness.json"),
                            json{{"density", f.describe()}, {"bounded", r.bounded}, {"sup", json_number(r.sup)},
                                 {"rate", json_number(r.rate)}});
    if (r.bounded) std::printf("bounded, sup %s\n", hessian_lab::format_double(r.sup).c_str());
    else std::printf("unbounded, rate %s\n", hessian_lab::format_double(r.rate).c_str());
    return kPass;
  });

  // degiorgi
  auto* dg = app.add_subcommand("degiorgi", "capacity-decay iteration");
  dg->require_subcommand(1);
  auto* dg_run = dg->add_subcommand("run", "solve, build h and eta, compute S_infinity");
  add_params(dg_run, pf);
  dg_run->add_option("--f", fspec, "density spec");
  bind(dg_run, [&] {
    const auto p = pf.params();
    const auto run = hessian_lab::degiorgi_pipeline(hessian_lab::DensitySpec::parse(fspec), p, common.radial_grid());
    hessian_lab::write_json(common.path("iteration-report.json"), hessian_lab::to_json(run.report));
    const bool ok = run.report.premise_ok && run.report.vanishes_beyond &&
                    run.report.measured_sup <= run.report.S_infinity + 1e-6 * std::max(1.0, run.report.S_infinity);
    std::printf("measured sup %s, S_infinity %s\n", hessian_lab::format_double(run.report.measured_sup).c_str(),
                hessian_lab::format_double(run.report.S_infinity).c_str());
    return verdict(ok);
  });

  // bound
  auto* bound = app.add_subcommand("bound", "stability bounds");
  bound->require_subcommand(1);
  std::string f1 = "const:1", f2 = "const:0";
  double g1 = 0.0, g2 = 0.0;
  auto* linfty = bound->add_subcommand("linfty", "sup |U(f1, g1) - U(f2, g2)| against the calibrated bound");
  add_params(linfty, pf);
  linfty->add_option("--f1", f1, "first density");
  linfty->add_option("--f2", f2, "second density");
  linfty->add_option("--g1", g1, "first constant boundary value");
  linfty->add_option("--g2", g2, "second constant boundary value");
  bind(linfty, [&] {
    const auto p = pf.params();
    const auto rep = hessian_lab::stability_pipeline(hessian_lab::DensitySpec::parse(f1),
                                                     hessian_lab::DensitySpec::parse(f2), p, g1, g2,
                                                     common.radial_grid());
    json j = rep.lemma ? hessian_lab::to_json(*rep.lemma) : json::object();
    if (!rep.lemma) {
      j["premise_ok"] = true;
      j["premise_margin"] = 0.0;
      j["s0"] = 0.0;
      j["S_infinity"] = 0.0;
      j["measured_sup"] = 0.0;
      j["vanishes_beyond"] = true;
      j["constants"] = json::object();
    }
    j["bound_rhs"] = json_number(rep.bound);
    j["measured_difference"] = json_number(rep.measured);
    j["comparison_margin"] = json_number(rep.comparison_margin);
    j["norm_f_diff"] = json_number(rep.norm_f_diff);
    j["energy"] = json_number(rep.energy);
    j["g_diff"] = json_number(rep.g_diff);
    j["constants"]["C1"] = json_number(rep.constants.C1);
    j["constants"]["C2"] = json_number(rep.constants.C2);
    j["constants"]["C3"] = json_number(rep.constants.C3);
    j["constants"]["D1_prime"] = json_number(rep.calibration.d1_prime);
    j["constants"]["D2_measure"] = json_number(rep.calibration.d2);
    hessian_lab::write_json(common.path("iteration-report.json"), j);
    bool ok = rep.pass();
    if (rep.lemma)
      ok = ok && rep.lemma->premise_ok &&
           rep.lemma->measured_sup <= rep.lemma->S_infinity + 1e-6 * std::max(1.0, rep.lemma->S_infinity);
    std::printf("measured %s <= bound %s\n", hessian_lab::format_double(rep.measured).c_str(),
                hessian_lab::format_double(rep.bound).c_str());
    return verdict(ok);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }
  if (!action) {
    std::cerr << app.help();
    return kUsage;
  }
  try {
    return action();
  } catch (const hessian_lab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
