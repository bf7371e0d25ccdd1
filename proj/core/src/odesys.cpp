#include "l2ext/odesys.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "l2ext/error.hpp"

namespace l2ext {
namespace {

std::string at_t(double t) {
  std::ostringstream os;
  os.precision(10);
  os << t;
  return os.str();
}

double fd_step(const WeightSpec& w, double t) {
  double h = 1e-5 * (1.0 + std::abs(t));
  if (!w.lower_infinite()) h = std::min(h, 0.5 * (t - w.lower()));
  return h;
}

}  // namespace

OdeSolution::OdeSolution(const WeightSpec& w, std::optional<double> delta, std::vector<double> grid)
    : table_(std::make_shared<const CumulativeTable>(w, std::move(grid))), delta_(delta) {
  if (delta) {
    if (!(*delta > 0.0)) fail(ErrorKind::Precondition, "delta must be positive");
    if (w.lower_infinite()) fail(ErrorKind::Precondition, "a finite delta needs A finite");
    const double b0 = boundary_value(w);
    if (!std::isfinite(b0)) fail(ErrorKind::Precondition, w.name + ": boundary value is infinite");
    a_ = b0 / *delta;
    b_ = a_ / *delta;
  }
  total_ = a_ + weight_moment(w, 0);
}

double OdeSolution::D(double t) const { return a_ + table_->at(t).first; }

double OdeSolution::N(double t) const {
  const auto [i1, i2] = table_->at(t);
  (void)i1;
  const double linear = a_ == 0.0 ? 0.0 : a_ * (t + A());
  return linear + i2 + b_;
}

double OdeSolution::u(double t) const { return -std::log(D(t)); }

double OdeSolution::s(double t) const {
  const auto [i1, i2] = table_->at(t);
  const double d = a_ + i1;
  const double linear = a_ == 0.0 ? 0.0 : a_ * (t + A());
  return (linear + i2 + b_) / d;
}

OdeSolution::Derivatives OdeSolution::derivatives(double t) const {
  const auto [i1, i2] = table_->at(t);
  const double d = a_ + i1;
  const double n = (a_ == 0.0 ? 0.0 : a_ * (t + A())) + i2 + b_;
  const double g = weight().density(t);
  const double dg = weight().density_derivative(t);
  Derivatives out{};
  out.u = -std::log(d);
  out.du = -g / d;
  out.d2u = -dg / d + g * g / (d * d);
  out.s = n / d;
  out.ds = 1.0 - n * g / (d * d);
  out.d2s = -(d * g + n * dg) / (d * d) + 2.0 * n * g * g / (d * d * d);
  return out;
}

std::vector<std::vector<double>> OdeSolution::table(const std::vector<double>& grid) const {
  std::vector<std::vector<double>> rows;
  rows.reserve(grid.size());
  for (double t : grid) rows.push_back({t, u(t), s(t)});
  return rows;
}

OdeSolution solve_ode(const WeightSpec& w, std::optional<double> delta, const SolveOptions& opts) {
  const auto grid = default_grid(w, std::max(opts.grid_points, 64));
  if (opts.check_admissibility) {
    const AdmissibilityReport rep = delta ? check_cA_delta(w, *delta, grid) : check_cA(w, grid);
    const bool ok = delta ? rep.holds_cA_delta : rep.holds_cA;
    if (!ok) {
      std::size_t worst = 0;
      for (std::size_t i = 0; i < rep.margins.size(); ++i) {
        if (rep.margins[i] <= kStrictMargin) {
          worst = i;
          break;
        }
      }
      fail(ErrorKind::Admissibility, w.name + ": inequality fails at t = " + at_t(grid[worst]));
    }
  }
  return OdeSolution(w, delta, grid);
}

std::vector<double> interior_grid(const WeightSpec& w, int n, double span) {
  if (w.lower_infinite()) return default_grid(w, n);
  std::vector<double> grid(static_cast<std::size_t>(n));
  const double x0 = -4.0;
  const double x1 = std::log10(span);
  for (int i = 0; i < n; ++i) grid[static_cast<std::size_t>(i)] = w.lower() + std::pow(10.0, x0 + (x1 - x0) * i / (n - 1));
  return grid;
}

ResidualReport residual_check(const OdeSolution& sol, const std::vector<double>& grid, DerivativeMode mode,
                              double s_shift) {
  ResidualReport rep;
  const WeightSpec& w = sol.weight();
  for (double t : grid) {
    double u, du, d2u, s, ds, d2s;
    if (mode == DerivativeMode::Analytic) {
      const auto d = sol.derivatives(t);
      u = d.u;
      du = d.du;
      d2u = d.d2u;
      s = d.s;
      ds = d.ds;
      d2s = d.d2s;
    } else {
      // Five-point stencils; a wider step than fd_step keeps the rounding
      // error of the second difference below the truncation error.
      double h = 2e-3 * (1.0 + std::abs(t));
      if (!w.lower_infinite()) h = std::min(h, 0.25 * (t - w.lower()));
      auto stencil = [h, t](auto f, double& v, double& d1, double& d2) {
        const double fm2 = f(t - 2 * h), fm1 = f(t - h), f0 = f(t), fp1 = f(t + h), fp2 = f(t + 2 * h);
        v = f0;
        d1 = (fm2 - 8 * fm1 + 8 * fp1 - fp2) / (12 * h);
        d2 = (-fm2 + 16 * fm1 - 30 * f0 + 16 * fp1 - fp2) / (12 * h * h);
      };
      stencil([&sol](double x) { return sol.u(x); }, u, du, d2u);
      stencil([&sol](double x) { return sol.s(x); }, s, ds, d2s);
    }
    s += s_shift;
    const double curvature = d2u * s - d2s;
    if (!(curvature > 0.0)) {
      fail(ErrorKind::PositivityViolation, w.name + ": u''s - s'' <= 0 at t = " + at_t(t));
    }
    const double weight_factor = std::exp(u + w.log_density(t));  // e^{u-t} c(t)
    const double r1 = std::abs((s + ds * ds / curvature) * weight_factor - 1.0);
    const double r2 = std::abs(ds - s * du - 1.0);
    if (r1 > rep.max_residual1) {
      rep.max_residual1 = r1;
      rep.worst_t1 = t;
    }
    if (r2 > rep.max_residual2) {
      rep.max_residual2 = r2;
      rep.worst_t2 = t;
    }
  }
  return rep;
}

PositivityReport positivity_check(const OdeSolution& sol, const std::vector<double>& grid) {
  PositivityReport rep;
  rep.holds = true;
  rep.signs_agree = true;
  for (double t : grid) {
    const double h = fd_step(sol.weight(), t);
    const double sp = (sol.s(t + h) - sol.s(t - h)) / (2.0 * h);
    const auto d = sol.derivatives(t);
    const double curvature = d.d2u * d.s - d.d2s;
    rep.s_prime.push_back(sp);
    rep.curvature.push_back(curvature);
    if (!(sp > 0.0) || !(curvature > 0.0)) rep.holds = false;
    if ((sp > 0.0) != (curvature > 0.0)) rep.signs_agree = false;
  }
  return rep;
}

double demailly_quoted_s(double r, double t) {
  return ((1.0 + 1.0 / r) * t - std::log(t) - 1.0) / (2.0 - 1.0 / t);
}

DemaillyReport demailly_s_lower_bound(double r, const std::vector<double>& grid) {
  if (!(r > 0.0)) fail(ErrorKind::Precondition, "demailly_s_lower_bound: r must be positive");
  const WeightSpec w = weight_demailly(r);
  const OdeSolution sol = solve_ode(w, 1.0 / r);
  DemaillyReport rep;
  rep.quoted_bound_holds = true;
  rep.ode_bound_holds = true;
  rep.min_ode_excess = kInf;
  for (double t : grid) {
    if (!(t > 2.0 * r)) fail(ErrorKind::Precondition, "demailly_s_lower_bound: grid must lie in (2r, inf)");
    const double q = demailly_quoted_s(r, t);
    const double s = sol.s(t);
    rep.max_mismatch = std::max(rep.max_mismatch, std::abs(s - q) / std::max(1.0, std::abs(q)));
    if (!(q >= 0.5 * t)) rep.quoted_bound_holds = false;
    const double excess = s - 0.5 * t;
    if (excess < rep.min_ode_excess) {
      rep.min_ode_excess = excess;
      rep.worst_ode_t = t;
    }
    if (!(excess >= 0.0)) rep.ode_bound_holds = false;
  }
  rep.matches_quoted = rep.max_mismatch <= 1e-8;
  return rep;
}

namespace {

// Profile on [-A'', -A']: g0 + (beta - g0) phi(x), x = (t + A'') / L,
// phi(x) = (1 + cos(pi x)) / 2, with closed-form first and second integrals.
struct Profile {
  double A2, L, g0, beta;
  double x(double t) const { return (t + A2) / L; }
  static double phi(double x) { return 0.5 * (1.0 + std::cos(std::numbers::pi * x)); }
  static double Phi(double x) { return 0.5 * (x + std::sin(std::numbers::pi * x) / std::numbers::pi); }
  static double Psi(double x) {
    const double pi = std::numbers::pi;
    return 0.5 * (0.5 * x * x + (1.0 - std::cos(pi * x)) / (pi * pi));
  }
  double g(double t) const { return g0 + (beta - g0) * phi(x(t)); }
  double I1(double t) const { return g0 * (t + A2) + (beta - g0) * L * Phi(x(t)); }
  double I2(double t) const {
    const double d = t + A2;
    return 0.5 * g0 * d * d + (beta - g0) * L * L * Psi(x(t));
  }
};

}  // namespace

SpliceResult splice_weight(const WeightSpec& w, double A_prime) {
  if (!(A_prime < w.A)) fail(ErrorKind::Precondition, "splice_weight needs A' < A");
  const auto base = check_cA(w, default_grid(w));
  if (!base.holds_cA) fail(ErrorKind::Admissibility, w.name + ": weight does not satisfy the c_A inequality");

  const double total = weight_moment(w, 0);
  const double t_join = -A_prime;
  const double g0 = w.density(t_join);
  CumulativeTable ref(w, {t_join});
  const double P = ref.I1()[0];

  double A2 = std::isfinite(w.A) ? 0.5 * (A_prime + w.A) : A_prime + 1.0;
  for (int attempt = 0; attempt < 60; ++attempt, A2 = 0.5 * (A2 + A_prime)) {
    const double L = A2 - A_prime;
    const double lo = -A2;
    // Reference double integrals of c at the condition-3 sample points.
    std::vector<double> ts;
    const int n_in = 64;
    for (int i = 1; i <= n_in; ++i) ts.push_back(lo + L * i / n_in);
    CumulativeTable cref(w, ts);
    const double i2_lo = CumulativeTable(w, {lo}).I2()[0];

    auto build = [&](double delta2) -> std::optional<Profile> {
      const double beta = (P - L * g0 * (1.0 - Profile::Phi(1.0))) / (1.0 / delta2 + L * Profile::Phi(1.0));
      if (!(beta > 0.0)) return std::nullopt;
      return Profile{A2, L, g0, beta};
    };
    // Minimum relative slack of condition 3 on [-A'', -A']; beyond -A' the
    // difference of both sides is constant once condition 2 holds.
    auto margin = [&](double log_delta) {
      const double delta2 = std::exp(log_delta);
      const auto pr = build(delta2);
      if (!pr) return -kInf;
      const double a2 = pr->beta / delta2;
      double worst = kInf;
      for (std::size_t i = 0; i < ts.size(); ++i) {
        const double t = ts[i];
        const double lhs = a2 * (t + A2) + pr->I2(t) + a2 / delta2;
        const double rhs = cref.I2()[i];
        worst = std::min(worst, (rhs - lhs) / rhs);
      }
      worst = std::min(worst, (i2_lo - a2 / delta2) / i2_lo);
      return worst;
    };

    // Golden-section search over log delta''.
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x0 = -12.0;
    double x3 = 12.0;
    double x1 = x3 - gr * (x3 - x0);
    double x2 = x0 + gr * (x3 - x0);
    double f1 = margin(x1);
    double f2 = margin(x2);
    for (int it = 0; it < 200 && x3 - x0 > 1e-10; ++it) {
      if (f1 < f2) {
        x0 = x1;
        x1 = x2;
        f1 = f2;
        x2 = x0 + gr * (x3 - x0);
        f2 = margin(x2);
      } else {
        x3 = x2;
        x2 = x1;
        f2 = f1;
        x1 = x3 - gr * (x3 - x0);
        f1 = margin(x1);
      }
    }
    const double best_log = f1 > f2 ? x1 : x2;
    const double best = std::max(f1, f2);
    if (!(best > kStrictMargin)) continue;

    const double delta2 = std::exp(best_log);
    const Profile pr = *build(delta2);
    SpliceResult out;
    out.A2 = A2;
    out.delta2 = delta2;
    out.weight.name = "splice(" + w.name + ")";
    out.weight.A = A2;
    out.weight.log_density = [ld = w.log_density, pr, t_join](double t) {
      return t >= t_join ? ld(t) : std::log(pr.g(t));
    };

    // Independent verification by quadrature on the assembled weight.
    const double b2 = boundary_value(out.weight);
    const double lhs2 = weight_moment(out.weight, 0) + b2 / delta2;
    out.constant_mismatch = std::abs(lhs2 - total);
    if (out.constant_mismatch > 1e-8 * total) {
      fail(ErrorKind::Construction, out.weight.name + ": total constant mismatch " + at_t(out.constant_mismatch));
    }
    std::vector<double> check_ts = ts;
    for (int i = 1; i <= 16; ++i) check_ts.push_back(t_join + i);
    std::sort(check_ts.begin(), check_ts.end());
    CumulativeTable mine(out.weight, check_ts);
    CumulativeTable theirs(w, check_ts);
    const double a2 = b2 / delta2;
    out.min_numerator_margin = kInf;
    for (std::size_t i = 0; i < check_ts.size(); ++i) {
      const double lhs = a2 * (check_ts[i] + A2) + mine.I2()[i] + a2 / delta2;
      const double rhs = theirs.I2()[i];
      out.min_numerator_margin = std::min(out.min_numerator_margin, (rhs - lhs) / rhs);
    }
    if (!(out.min_numerator_margin > 0.0)) {
      fail(ErrorKind::Construction, out.weight.name + ": numerator dominance fails after construction");
    }
    return out;
  }
  fail(ErrorKind::Construction, w.name + ": no (A'', delta'') found within the bisection budget");
}

}  // namespace l2ext
