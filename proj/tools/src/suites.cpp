#include "l2ext/cli/suites.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <utility>

#include "l2ext/constants.hpp"
#include "l2ext/error.hpp"
#include "l2ext/extremal.hpp"
#include "l2ext/mollifier.hpp"
#include "l2ext/odesys.hpp"
#include "l2ext/planar.hpp"
#include "l2ext/residue.hpp"
#include "l2ext/weights.hpp"

namespace l2ext::cli {
namespace {

constexpr double kPi = std::numbers::pi;

std::string num(double x) { return format_number(x); }

/// Short form for check ids.
std::string label(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

class Recorder {
 public:
  explicit Recorder(SuiteReport& report) : report_(report) {}

  /// Runs `body`; an exception becomes a failed record named `id`.
  template <class F>
  void guard(const std::string& id, const std::string& anchor, F&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      CheckRecord r;
      r.id = id;
      r.anchor = anchor;
      r.failure = e.what();
      report_.records.push_back(std::move(r));
    }
  }

  /// |measured - expected| <= tol, relative to |expected| when `relative`.
  void near(const std::string& id, const std::string& anchor, double measured, double expected, double tol,
            bool relative = true) {
    const double scale = relative ? std::max(std::abs(expected), 1e-300) : 1.0;
    const double err = std::abs(measured - expected) / scale;
    CheckRecord r = base(id, anchor, measured);
    r.expected = expected;
    r.tolerance = tol;
    r.margin = tol - err;
    r.pass = err <= tol;
    push(std::move(r));
  }

  void at_most(const std::string& id, const std::string& anchor, double measured, double bound) {
    CheckRecord r = base(id, anchor, measured);
    r.tolerance = bound;
    r.margin = bound - measured;
    r.pass = measured <= bound;
    push(std::move(r));
  }

  void above(const std::string& id, const std::string& anchor, double measured, double bound) {
    CheckRecord r = base(id, anchor, measured);
    r.expected = bound;
    r.margin = measured - bound;
    r.pass = measured > bound;
    push(std::move(r));
  }

  void truth(const std::string& id, const std::string& anchor, bool ok, std::optional<double> measured = {}) {
    CheckRecord r;
    r.id = id;
    r.anchor = anchor;
    r.measured = measured;
    r.pass = ok;
    push(std::move(r));
  }

 private:
  static CheckRecord base(const std::string& id, const std::string& anchor, double measured) {
    CheckRecord r;
    r.id = id;
    r.anchor = anchor;
    r.measured = measured;
    return r;
  }

  void push(CheckRecord r) {
    const auto bad = [](const std::optional<double>& x) { return x && !std::isfinite(*x); };
    if (bad(r.measured) || bad(r.expected) || bad(r.margin)) {
      r.pass = false;
      if (r.failure.empty()) r.failure = "non-finite value";
    }
    report_.records.push_back(std::move(r));
  }

  SuiteReport& report_;
};

// weights -------------------------------------------------------------------

void weights_suite(const RunConfig& cfg, SuiteReport& rep) {
  Recorder rec(rep);
  const int n = cfg.get_int("grid.ode_points");
  for (const OdeCase& c : ode_cases()) {
    const std::string id = "cA." + c.weight;
    rec.guard(id, "weighted integral inequality defining the admissible class", [&] {
      const WeightSpec w = weight_by_name(c.weight);
      const AdmissibilityReport r = check_cA(w, default_grid(w, n));
      if (c.admissible) {
        rec.above(id, "weighted integral inequality defining the admissible class", r.margin_cA, kStrictMargin);
      } else {
        rec.truth(id + ".fails", "a smooth bump on a constant violates the inequality", !r.holds_cA, r.margin_cA);
      }
    });
  }

  const std::string moment_anchor = "total weighted integral int c e^{-t} over (-A, inf)";
  for (const auto& [name, expected] : std::vector<std::pair<std::string, double>>{
           {"const", 1.0}, {"concise(1)", 1.0}, {"concise(0.25)", 4.0}, {"demailly(1)", 0.5}, {"dhp(0.5,2)", 2.0 * std::exp(-1.0)}}) {
    rec.guard("moment." + name, moment_anchor, [&] {
      rec.near("moment." + name, moment_anchor, weight_moment(weight_by_name(name), 0), expected, 1e-10);
    });
  }
  const std::string bv_anchor = "boundary limit c_A(-A) e^A";
  for (const auto& [name, expected] : std::vector<std::pair<std::string, double>>{
           {"const", 1.0}, {"demailly(1)", 0.25}, {"dhp(0.5,2)", std::exp(-1.0)}, {"limiting(0.5)", 0.0}}) {
    rec.guard("boundary." + name, bv_anchor, [&] {
      rec.near("boundary." + name, bv_anchor, boundary_value(weight_by_name(name)), expected, 1e-8, false);
    });
  }
  rec.guard("boundary.limiting(-0.5)", bv_anchor, [&] {
    const double v = boundary_value(weight_by_name("limiting(-0.5)"));
    rec.truth("boundary.limiting(-0.5)", "negative exponent drives the boundary limit to +inf", std::isinf(v) && v > 0);
  });

  rec.guard("sufficient.concise(1)", "log-concave rise-then-fall condition implies the inequality", [&] {
    const WeightSpec w = weight_concise(1.0);
    const bool suff = check_sufficient(w, 0.0);
    const AdmissibilityReport r = check_cA(w, default_grid(w, n));
    rec.truth("sufficient.concise(1)", "log-concave rise-then-fall condition implies the inequality", suff && r.holds_cA);
  });

  for (const double delta : {1.0, 1e6}) {
    const std::string id = "cA_delta.bump.delta=" + label(delta);
    rec.guard(id, "delta-inequality fails for the bump weight", [&] {
      const WeightSpec w = weight_bump();
      const AdmissibilityReport r = check_cA_delta(w, delta, default_grid(w, n));
      rec.truth(id, "delta-inequality fails for the bump weight", !r.holds_cA_delta, r.margin_cA_delta);
    });
  }

  rec.guard("approximate.demailly(1)", "truncated weights with tail integral below 1/B", [&] {
    const WeightSpec w = weight_demailly(1.0);
    const double B = 10.0;
    const WeightSpec approx = approximate_weight(w, B);
    const double tail = integrate_density(approx, w.lower() + B, kInf);
    rec.at_most("approximate.demailly(1).tail", "truncated weights with tail integral below 1/B", tail, 1.0 / B);
    const double t = w.lower() + 0.5 * B;
    rec.near("approximate.demailly(1).agrees", "truncated weight equals the original near -A", approx.eval(t), w.eval(t),
             1e-12);
  });

  rec.guard("splice.const(1)", "steep extension below -A' preserving the total constant", [&] {
    const SpliceResult s = splice_weight(weight_const(1.0), 0.5);
    rec.at_most("splice.const(1).constant", "steep extension below -A' preserving the total constant",
                s.constant_mismatch, 1e-10);
    rec.above("splice.const(1).numerator", "spliced weight keeps the delta-inequality numerator positive",
              s.min_numerator_margin, 0.0);
  });
}

// ode -------------------------------------------------------------------------

void ode_suite(const RunConfig& cfg, SuiteReport& rep) {
  Recorder rec(rep);
  const int n = cfg.get_int("grid.ode_points");
  const double span = cfg.get("grid.span");
  const double tol = cfg.get("tolerance.residual");
  const std::string anchor_res = "closed-form solution satisfies both ODEs";
  const std::string anchor_pos = "inequality equivalent to s' > 0";

  for (const OdeCase& c : ode_cases()) {
    const std::string id = "ode." + c.weight;
    rec.guard(id, anchor_pos, [&] {
      const WeightSpec w = weight_by_name(c.weight);
      const std::vector<double> grid = interior_grid(w, n, span);
      SolveOptions opts;
      opts.check_admissibility = c.admissible;
      const OdeSolution sol = solve_ode(w, c.delta, opts);
      const AdmissibilityReport adm = c.delta ? check_cA_delta(w, *c.delta, grid) : check_cA(w, grid);
      bool agree = true;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        if ((sol.derivatives(grid[i]).ds > 0.0) != (adm.margins[i] > 0.0)) agree = false;
      }
      rec.truth(id + ".sign_agreement", anchor_pos, agree);
      const PositivityReport pos = positivity_check(sol, grid);
      if (c.admissible) {
        const ResidualReport res = residual_check(sol, grid);
        rec.at_most(id + ".residual1", anchor_res, res.max_residual1, tol);
        rec.at_most(id + ".residual2", anchor_res, res.max_residual2, tol);
        rec.truth(id + ".positivity", anchor_pos, pos.holds && pos.signs_agree);
      } else {
        rec.truth(id + ".inequalities_fail", "bump counterexample violates both inequalities",
                  !check_cA(w, grid).holds_cA && !adm.holds_cA_delta);
        rec.truth(id + ".positivity_fails", "bump counterexample has s' <= 0 somewhere", !pos.holds && pos.signs_agree);
      }
    });
  }

  rec.guard("ode.const.fd_residual", anchor_res, [&] {
    const OdeSolution sol = solve_ode(weight_const(), 1.0);
    std::vector<double> grid;
    for (int i = 1; i <= 64; ++i) grid.push_back(8.0 * i / 65.0);
    const ResidualReport r = residual_check(sol, grid, DerivativeMode::FiniteDifference);
    rec.at_most("ode.const.fd_residual", anchor_res, std::max(r.max_residual1, r.max_residual2), tol);
  });

  rec.guard("ode.const.exact", "closed-form solution for the constant weight", [&] {
    const OdeSolution sol = solve_ode(weight_const(), 1.0);
    // D = 2 - e^{-t}, N = 2t + e^{-t} for c = 1, A = 0, delta = 1.
    const double t = 1.0;
    const double s = (2.0 * t + std::exp(-t)) / (2.0 - std::exp(-t));
    rec.near("ode.const.exact", "closed-form solution for the constant weight", sol.s(t), s, 1e-12);
  });

  rec.guard("ode.demailly.quoted_bound", "quoted Demailly closed form for s stays above t/2", [&] {
    std::vector<double> grid;
    for (int i = 1; i <= 200; ++i) grid.push_back(2.0 + 98.0 * i / 200.0);
    const DemaillyReport r = demailly_s_lower_bound(1.0, grid);
    rec.truth("ode.demailly.quoted_bound", "quoted Demailly closed form for s stays above t/2", r.quoted_bound_holds);
  });

  Table moll{"mollifier", {"t0", "eps", "conditions", "c1_distance"}, {}};
  double prev = kInf;
  for (const auto& [t0, eps] : std::vector<std::pair<double, double>>{{0.0, 0.2}, {3.0, 0.1}, {3.0, 0.05}}) {
    const std::string id = "mollifier.t0=" + label(t0) + ".eps=" + label(eps);
    rec.guard(id, "smooth convex regularization of b_{t0}", [&] {
      const MollifierReport r = check_mollifier(make_mollifier(t0, eps), 1000);
      rec.truth(id, "smooth convex regularization of b_{t0}", r.all(), r.c1_distance());
      moll.rows.push_back({num(t0), num(eps), r.all() ? "hold" : "violated", num(r.c1_distance())});
      if (t0 == 3.0) {
        if (prev < kInf) rec.truth(id + ".shrinks", "v converges to b_{t0} in C^1 as eps decreases", r.c1_distance() < prev);
        prev = r.c1_distance();
      }
    });
  }
  rep.tables.push_back(std::move(moll));
}

// extremal ----------------------------------------------------------------

void extremal_suite(const RunConfig& cfg, SuiteReport& rep) {
  Recorder rec(rep);
  const std::string anchor_opt = "the constant 1 is attained in the limit a, eps -> 0";
  Table sweep{"optimality", {"a", "eps", "ratio"}, {}};
  std::vector<double> ratios;
  rec.guard("optimality", anchor_opt, [&] {
    for (const double a : {1e-2, 1e-3, 1e-4}) {
      const double r = optimality_ratio(1, weight_const(), 1.0, 0.0, a, 1e-3);
      ratios.push_back(r);
      sweep.rows.push_back({num(a), num(1e-3), num(r)});
    }
    rec.near("optimality.a=1e-4", anchor_opt, ratios.back(), 1.0, cfg.get("tolerance.optimality"));
    const bool monotone = std::abs(1.0 - ratios[1]) < std::abs(1.0 - ratios[0]) &&
                          std::abs(1.0 - ratios[2]) < std::abs(1.0 - ratios[1]);
    rec.truth("optimality.monotone", anchor_opt, monotone);
  });
  rep.tables.push_back(std::move(sweep));

  const std::string anchor_ln = "least-norm extension is the constant polynomial";
  for (const int m : {1, 2}) {
    const std::string id = "least_norm.m=" + std::to_string(m);
    rec.guard(id, anchor_ln, [&] {
      ModelBall ball{m, 0.0, 1e-3, 1.0, 1e-3, false};
      const std::complex<double> f0(2.0, 1.0);
      LeastNormOptions opts;
      opts.K = cfg.get_int("extremal.K");
      const LeastNormResult r = least_norm_extension(ball, weight_const(), f0, opts);
      const double expected = std::norm(f0) * radial_integral(ball, weight_const());
      rec.near(id + ".value", anchor_ln, r.value, expected, cfg.get("tolerance.least_norm"));
      rec.at_most(id + ".higher", anchor_ln, r.max_higher, cfg.get("tolerance.coefficients") * std::abs(f0));
      opts.start_perturbation = 0.5;
      const LeastNormResult p = least_norm_extension(ball, weight_const(), f0, opts);
      double diff = 0.0;
      for (std::size_t i = 0; i < r.coefficients.size(); ++i) diff = std::max(diff, std::abs(r.coefficients[i] - p.coefficients[i]));
      rec.at_most(id + ".unique", "the minimizer is unique", diff, 1e-10);
    });
  }

  const int k_max = cfg.get_int("extremal.k_max");
  const std::string anchor_mom = "crossing weights: higher moments strictly dominate";
  struct Crossing {
    std::string name;
    RealFn d1;
    double r1, r2, r3;
  };
  const std::vector<Crossing> crossings{{"one", [](double) { return 1.0; }, 3.0, 2.0, 1.0},
                                        {"linear", [](double t) { return 1.0 + 0.1 * t; }, 4.0, 2.5, 1.0},
                                        {"decay", [](double t) { return 1.0 / (1.0 + t); }, 2.0, 1.2, 0.5}};
  for (const Crossing& c : crossings) {
    const std::string id = "crossing." + c.name;
    rec.guard(id, anchor_mom, [&] {
      const CrossingPair pair = build_crossing(c.d1, c.r1, c.r2, c.r3);
      const MomentReport m = moment_dominance(pair, k_max);
      rec.truth(id + ".strict", anchor_mom, m.strict);
      rec.at_most(id + ".k0", "equal total weighted integrals", std::abs(m.k0_difference), cfg.get("tolerance.moment_k0"));
      CrossingPair swapped = pair;
      std::swap(swapped.d1, swapped.d2);
      const MomentReport s = moment_dominance(swapped, k_max);
      rec.truth(id + ".swapped", "swapping the pair reverses the inequality at k = 1", !s.strict && s.first_failure == 1);
      const std::vector<std::complex<double>> f{1.0, 1.0};
      rec.above(id + ".disc", "equality holds only for constant f", disc_polynomial_norm(pair.d2, f),
                disc_polynomial_norm(pair.d1, f));
    });
  }

  const int j_max = cfg.get_int("extremal.j_max");
  for (const double r : {0.3, 0.5, 0.8}) {
    const std::string id = "disc_tail.r=" + label(r);
    rec.guard(id, "uniform constant for the disc minus a smaller disc", [&] {
      const DiscTailReport d = disc_tail_constant(r, j_max);
      rec.near(id, "uniform constant for the disc minus a smaller disc", d.constant, 1.0 / (1.0 - r * r), 0.0);
      bool below = true;
      for (std::size_t j = 0; j < d.ratios.size(); ++j) {
        if (d.ratios[j] > d.bound || (j > 0 && d.ratios[j] > d.ratios[j - 1])) below = false;
      }
      rec.truth(id + ".ratios", "per-monomial ratios are non-increasing and stay below 1/(1-r^2)", below);
    });
  }
}

// planar ------------------------------------------------------------------

void planar_suite(const RunConfig& cfg, SuiteReport& rep) {
  Recorder rec(rep);
  const int order = cfg.get_int("planar.order");
  Table suita{"suita", {"domain", "q", "z0", "c_beta", "B", "gap", "error_bound"}, {}};
  const std::string anchor_eq = "equality pi B = c_beta^2 on the disc";
  for (const double z : {0.0, 0.3, 0.6}) {
    const std::string id = "suita.disc.z0=" + label(z);
    rec.guard(id, anchor_eq, [&] {
      const SuitaRecord s = suita_check(PlanarDomain::disc(), z);
      rec.at_most(id, anchor_eq, std::abs(s.gap), cfg.get("tolerance.suita_disc"));
      suita.rows.push_back({"disc", "0", num(z), num(s.c_beta), num(s.bergman), num(s.gap), num(s.truncation_error_bound)});
    });
  }
  const std::string anchor_strict = "strict inequality c_beta^2 < pi B off the disc";
  for (const auto& [q, radii] : std::vector<std::pair<double, std::vector<double>>>{
           {0.3, {0.4, 0.55, 0.8}}, {0.5, {0.6, 0.7, 0.85}}, {0.7, {0.75, 0.84, 0.95}}}) {
    for (const double z : radii) {
      const std::string id = "suita.annulus.q=" + label(q) + ".z0=" + label(z);
      rec.guard(id, anchor_strict, [&] {
        const SuitaRecord s = suita_check(PlanarDomain::annulus(q, order), z);
        rec.above(id, anchor_strict, s.gap, s.truncation_error_bound);
        suita.rows.push_back(
            {"annulus", num(q), num(z), num(s.c_beta), num(s.bergman), num(s.gap), num(s.truncation_error_bound)});
      });
    }
  }
  rep.tables.push_back(std::move(suita));

  const std::string anchor_cap = "logarithmic capacity as the Robin limit of G - log|z - z0|";
  for (const auto& [label, dom, z] : std::vector<std::tuple<std::string, PlanarDomain, double>>{
           {"disc", PlanarDomain::disc(), 0.3}, {"annulus", PlanarDomain::annulus(0.5, order), 0.7}}) {
    const std::string id = "capacity." + label;
    rec.guard(id, anchor_cap, [&] {
      const CapacityEstimate c = log_capacity(dom, z);
      rec.near(id, anchor_cap, c.value, std::exp(robin_constant(dom, z)), 1e-8);
    });
  }
  rec.guard("analytic_capacity.disc", "analytic capacity equals c_beta when |g| = e^G", [&] {
    const double cb = analytic_capacity_disc(0.4);
    rec.near("analytic_capacity.disc", "analytic capacity equals c_beta when |g| = e^G", cb,
             1.0 / (1.0 - 0.16), 1e-12);
  });
  rec.guard("analytic_capacity.annulus", "plumbing", [&] {
    bool raised = false;
    try {
      analytic_capacity(PlanarDomain::annulus(0.5, order), 0.7);
    } catch (const Error& e) {
      raised = e.kind() == ErrorKind::UnsupportedDomain;
    }
    rec.truth("analytic_capacity.annulus", "plumbing", raised);
  });

  const std::string anchor_zero = "L-kernel of the annulus has exactly one zero";
  Table zeros{"l_kernel_zeros", {"t", "zeros", "winding_outer", "winding_inner", "samples"}, {}};
  bool any_one = false;
  for (const double t : {0.6, 0.7, 0.8}) {
    rec.guard("l_kernel.t=" + label(t), anchor_zero, [&] {
      const ZeroCount z = l_kernel_zero_count(PlanarDomain::annulus(0.5, order), t);
      if (z.zeros == 1) any_one = true;
      zeros.rows.push_back({num(t), std::to_string(z.zeros), num(z.winding_outer), num(z.winding_inner),
                            std::to_string(z.samples)});
    });
  }
  rec.truth("l_kernel.annulus.one_zero", anchor_zero, any_one);
  rep.tables.push_back(std::move(zeros));
  rec.guard("l_kernel.disc", "L-kernel of the disc has no zeros", [&] {
    rec.truth("l_kernel.disc", "L-kernel of the disc has no zeros", l_kernel_zero_count(PlanarDomain::disc(), 0.3).zeros == 0);
  });
}

// residue -----------------------------------------------------------------

void residue_suite(const RunConfig& cfg, SuiteReport& rep) {
  Recorder rec(rep);
  const double sphere[] = {2.0 * kPi, 4.0 * kPi, 2.0 * kPi * kPi, 8.0 * kPi * kPi / 3.0, kPi * kPi * kPi};
  for (int m = 1; m <= 5; ++m) {
    rec.near("sphere_volume.m=" + std::to_string(m), "volume of the unit sphere", sphere_volume(m), sphere[m - 1], 1e-14);
  }
  const std::string anchor = "residue measure equals e^{-psi} times Lebesgue measure on S";
  Table diag{"residue", {"case", "t", "slab", "residual"}, {}};
  for (const ResidueCase& c : residue_cases()) {
    const std::string id = "residue." + c.name;
    rec.guard(id, anchor, [&] {
      const ResidueLimit r = residue_limit(c.config, c.t_list);
      rec.near(id, anchor, r.limit, r.target, cfg.get("tolerance.residue"));
      rec.truth(id + ".monotone", "slab values settle monotonically", !r.monotone_warning);
      for (std::size_t i = 0; i < r.t.size(); ++i) {
        diag.rows.push_back({c.name, num(r.t[i]), num(r.slab[i]), num(r.fit_residuals[i])});
      }
    });
  }
  rep.tables.push_back(std::move(diag));
  rec.guard("residue.linearity", "slab integral is linear in f", [&] {
    PolarConfig c = residue_cases().front().config;
    const double base = slab_integral(c, 8.0).value;
    const auto f = c.f;
    c.f = [f](const PolarConfig::Point& p) { return 3.0 * f(p); };
    rec.near("residue.linearity", "slab integral is linear in f", slab_integral(c, 8.0).value, 3.0 * base, 1e-14);
  });
}

// constants -----------------------------------------------------------------

void constants_suite(const RunConfig& cfg, SuiteReport& rep) {
  Recorder rec(rep);
  const double tol = cfg.get("tolerance.constants");
  Table table{"constants", {"id", "parameters", "closed_form", "master", "quadrature", "spread"}, {}};
  auto add = [&](const ConstantReport& r, const std::string& anchor) {
    rec.at_most(r.id + "(" + r.parameters + ").spread", anchor, r.spread(), tol);
    table.rows.push_back({r.id, r.parameters, num(r.closed_form), num(r.master), num(r.quadrature), num(r.spread())});
  };

  rec.guard("demailly", "1/4 + int_2^inf t^{-2} dt = 3/4", [&] {
    const ConstantReport r = demailly_constant(1.0);
    rec.near("demailly(r=1)", "1/4 + int_2^inf t^{-2} dt = 3/4", r.master, 0.75, tol);
    add(r, "optimal constant 3r/4 for the Demailly weight");
  });
  for (const int m : {1, 2, 3}) {
    for (const double eps : {0.5, 1.0, 2.0}) {
      rec.guard("ohsawa2", "optimal constant of the Ohsawa-type weight", [&] {
        const ConstantReport r = ohsawa2_constant(m, eps);
        rec.near("ohsawa2(" + r.parameters + ").quadrature", "optimal constant of the Ohsawa-type weight", r.master,
                 r.quadrature, tol);
        add(r, "optimal constant of the Ohsawa-type weight");
      });
    }
  }
  for (const double eps : {0.25, 1.0, 2.0}) {
    rec.guard("concise", "constant 1/eps of the concise weight", [&] {
      const ConstantReport r = concise_constant(eps);
      rec.near("concise(" + r.parameters + ")", "constant 1/eps of the concise weight", r.master, 1.0 / eps, tol);
      add(r, "constant 1/eps of the concise weight");
    });
  }
  const double dtol = cfg.get("tolerance.dhp");
  for (const double alpha : {1.0, 2.0}) {
    for (const double b : {0.25, 0.5, 1.0}) {
      const std::string id = "dhp(alpha=" + label(alpha) + ",b=" + label(b) + ")";
      const std::string anchor = "2 pi (alpha e^{-b alpha} + e^{-b alpha} / b) M^{1-b}";
      rec.guard(id, anchor, [&] {
        const double M = 2.0;
        const DhpReport d = dhp_constant(alpha, b, M);
        const double closed = 2.0 * kPi * (alpha + 1.0 / b) * std::exp(-b * alpha) * std::pow(M, 1.0 - b);
        rec.near(id, anchor, d.report.master, closed, dtol);
        rec.near(id + ".boundary_term", anchor, d.boundary_term, d.boundary_term_closed, dtol);
        rec.near(id + ".integral_term", anchor, d.integral_term, d.integral_term_closed, dtol);
        add(d.report, anchor);
      });
    }
  }
  for (const int m : {1, 2, 3}) {
    rec.guard("bern(m=" + std::to_string(m) + ")", "2^m pi^m / m! for the unit ball", [&] {
      const BernReport b = bern_constant(m);
      rec.near("bern(m=" + std::to_string(m) + ")", "2^m pi^m / m! for the unit ball", b.value, b.cross_check, tol);
    });
  }
  rec.guard("mv(t^2)", "class D gain g = t^2 has C(g) = 1 and constant 1", [&] {
    const MvReport r = mv_class_check([](double t) { return t * t; }, 1.0);
    rec.near("mv(t^2).C", "class D gain g = t^2 has C(g) = 1", r.C, 1.0, tol);
    rec.truth("mv(t^2).admissible", "gain converts into an admissible weight", r.weight_admissible);
    rec.above("mv(t^2).improvement", "optimal constant improves the original estimate", r.old_constant, r.new_constant);
  });
  for (const double alpha : {-0.999, -0.99, -0.9, -0.5, 0.0, 0.5, 1.0, 2.0}) {
    const std::string id = "limiting(alpha=" + label(alpha) + ")";
    rec.guard(id, "limiting-case bound (2 + alpha)/(1 + alpha)", [&] {
      const LimitingReport r = limiting_bound(alpha);
      rec.at_most(id, "limiting-case bound (2 + alpha)/(1 + alpha)", r.integral, r.bound);
      rec.at_most(id + ".scaled", "(1 + alpha) times the integral stays below 2 + alpha", r.scaled, 2.0 + alpha);
    });
  }
  rep.tables.push_back(std::move(table));
}

}  // namespace

std::vector<OdeCase> ode_cases() {
  return {{"const", 1.0, true},          {"ohsawa2(1,1)", std::nullopt, true}, {"ohsawa2(2,1)", std::nullopt, true},
          {"concise(1)", std::nullopt, true}, {"demailly(1)", 1.0, true},     {"dhp(0.5,1)", 1.0, true},
          {"limiting(0.5)", std::nullopt, true}, {"limiting(-0.5)", std::nullopt, true}, {"mv(2)", 1.0, true},
          {"bump", 1.0, false}};
}

SuiteReport run_suite(const std::string& name, const RunConfig& cfg) {
  SuiteReport rep;
  rep.suite = name;
  if (name == "weights") {
    weights_suite(cfg, rep);
  } else if (name == "ode") {
    ode_suite(cfg, rep);
  } else if (name == "extremal") {
    extremal_suite(cfg, rep);
  } else if (name == "planar") {
    planar_suite(cfg, rep);
  } else if (name == "residue") {
    residue_suite(cfg, rep);
  } else if (name == "constants") {
    constants_suite(cfg, rep);
  } else {
    fail(ErrorKind::Config, "unknown suite '" + name + "'");
  }
  return rep;
}

}  // namespace l2ext::cli
