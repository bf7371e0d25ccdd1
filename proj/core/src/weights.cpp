#include "l2ext/weights.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "l2ext/error.hpp"

namespace l2ext {
namespace {

constexpr double kLog1e6 = 13.815510557964274;

void require_inside(const WeightSpec& w, double t) {
  if (std::isnan(t) || t <= w.lower()) {
    fail(ErrorKind::Domain, w.name + ": t = " + std::to_string(t) + " is outside (-A, inf)");
  }
}

quad::Result checked_integral(const RealFn& f, double lo, double hi, const quad::Tolerance& tol) {
  quad::Result r = quad::integrate(f, lo, hi, tol);
  if (!r.converged && r.error > 1e-8 * std::abs(r.value)) {
    fail(ErrorKind::Convergence, "adaptive quadrature did not reach tolerance on [" + std::to_string(lo) +
                                     ", " + std::to_string(hi) + "]");
  }
  return r;
}

// Coarse scan of the log-density to locate its peak and the region where the
// density exceeds `drop` (in log units) below the peak. Only used for A = inf.
struct Extent {
  double peak;
  double lo;
  double hi;
};

Extent density_extent(const WeightSpec& w, double drop_lo, double drop_hi) {
  const double step = 0.25;
  double best_t = 0.0;
  double best = -kInf;
  for (double t = -400.0; t <= 400.0; t += step) {
    const double v = w.log_density(t);
    if (std::isfinite(v) && v > best) {
      best = v;
      best_t = t;
    }
  }
  // Refine the peak by bisection on the sign of the central-difference slope.
  {
    auto slope = [&](double t) {
      const double h = 1e-6 * (1.0 + std::abs(t));
      return w.log_density(t + h) - w.log_density(t - h);
    };
    double x0 = best_t - step, x1 = best_t + step;
    if (slope(x0) > 0.0 && slope(x1) < 0.0) {
      for (int it = 0; it < 200 && x1 - x0 > 1e-13 * (1.0 + std::abs(best_t)); ++it) {
        const double mid = 0.5 * (x0 + x1);
        (slope(mid) > 0.0 ? x0 : x1) = mid;
      }
      best_t = 0.5 * (x0 + x1);
      best = w.log_density(best_t);
    }
  }
  double lo = best_t;
  while (lo > best_t - 400.0 && w.log_density(lo - step) > best - drop_lo) lo -= step;
  double hi = best_t;
  while (hi < best_t + 400.0 && w.log_density(hi + step) > best - drop_hi) hi += step;
  return {best_t, lo, hi};
}

}  // namespace

double WeightSpec::eval(double t) const {
  require_inside(*this, t);
  const double c = std::exp(log_density(t) + t);
  if (!(c > 0.0) || !std::isfinite(c)) {
    fail(ErrorKind::PositivityViolation, name + ": c(t) is not a positive finite number at t = " + std::to_string(t));
  }
  return c;
}

double WeightSpec::density(double t) const { return std::exp(log_density(t)); }

double WeightSpec::density_derivative(double t) const {
  if (density_d1) return density_d1(t);
  double h = 1e-5 * (1.0 + std::abs(t));
  if (!lower_infinite()) h = std::min(h, 0.5 * (t - lower()));
  return (density(t + h) - density(t - h)) / (2.0 * h);
}

WeightSpec make_weight(std::string name, double A, RealFn c) {
  WeightSpec w;
  w.name = std::move(name);
  w.A = A;
  w.log_density = [c = std::move(c)](double t) { return std::log(c(t)) - t; };
  return w;
}

double integrate_density(const WeightSpec& w, double lo, double hi, const RealFn& kernel,
                         const quad::Tolerance& tol) {
  if (lo < w.lower()) fail(ErrorKind::Domain, w.name + ": integration starts below -A");
  if (hi <= lo) return 0.0;
  auto f = [&](double t) {
    if (t <= w.lower()) return 0.0;
    const double g = w.density(t);
    return kernel ? kernel(t) * g : g;
  };
  const bool singular_start = lo == w.lower() && !w.lower_infinite() && w.endpoint && w.endpoint->beta != 0.0;
  if (!singular_start) return checked_integral(f, lo, hi, tol).value;

  // d^beta R(d) dd with d = s^{1/(1+beta)} becomes R(d) ds / (1 + beta).
  const double beta = w.endpoint->beta;
  const double p = 1.0 + beta;
  const double split = std::min(hi, lo + 1.0);
  const double s_max = std::pow(split - lo, p);
  auto mapped = [&](double s) {
    if (s <= 0.0) s = 0.0;
    const double d = std::pow(s, 1.0 / p);
    const double base = w.endpoint->regular(d) / p;
    return kernel ? kernel(lo + d) * base : base;
  };
  double total = checked_integral(mapped, 0.0, s_max, tol).value;
  if (hi > split) total += checked_integral(f, split, hi, tol).value;
  return total;
}

double weight_moment(const WeightSpec& w, int k) {
  if (k < 0) fail(ErrorKind::Precondition, "weight_moment: k must be nonnegative");
  if (k == 0) return integrate_density(w, w.lower(), kInf);
  WeightSpec shifted = w;
  const double kk = k;
  shifted.log_density = [ld = w.log_density, kk](double t) { return ld(t) - kk * t; };
  if (w.endpoint) {
    const double A = w.A;
    shifted.endpoint->regular = [reg = w.endpoint->regular, kk, A](double d) {
      return reg(d) * std::exp(-kk * (d - A));
    };
  }
  return integrate_density(shifted, shifted.lower(), kInf);
}

double boundary_value(const WeightSpec& w) {
  if (w.lower_infinite()) return 0.0;
  if (w.endpoint && w.endpoint->beta > 0.0) return 0.0;
  if (w.endpoint && w.endpoint->beta < 0.0) return kInf;
  // Start from h = 1/8 and shrink it when the density varies on a finer scale.
  for (double h = 0.125; h >= 1e-6; h /= 8.0) {
    std::vector<double> samples;
    for (int j = 0; j <= 6; ++j) {
      const double v = w.density(w.lower() + std::ldexp(h, -j));
      if (!std::isfinite(v)) fail(ErrorKind::LimitUndefined, w.name + ": density is not finite near -A");
      samples.push_back(v);
    }
    const auto ex = quad::richardson(samples);
    const double scale = std::max(std::abs(ex.value), 1e-300);
    if (std::isfinite(ex.value) && ex.spread() <= 1e-8 * scale) return std::max(ex.value, 0.0);
  }
  fail(ErrorKind::LimitUndefined, w.name + ": boundary limit does not settle under Richardson extrapolation");
}

CumulativeTable::CumulativeTable(const WeightSpec& w, std::vector<double> grid)
    : weight_(std::make_shared<const WeightSpec>(w)), grid_(std::move(grid)) {
  if (grid_.empty()) fail(ErrorKind::Precondition, "cumulative table needs a non-empty grid");
  if (!std::is_sorted(grid_.begin(), grid_.end())) fail(ErrorKind::Precondition, "grid must be sorted");
  require_inside(w, grid_.front());
  i1_.resize(grid_.size());
  i2_.resize(grid_.size());
  const double t0 = grid_.front();
  i1_[0] = integrate_density(w, w.lower(), t0);
  i2_[0] = integrate_density(w, w.lower(), t0, [t0](double u) { return t0 - u; });
  for (std::size_t i = 0; i + 1 < grid_.size(); ++i) {
    const double a = grid_[i];
    const double b = grid_[i + 1];
    i1_[i + 1] = i1_[i] + integrate_density(w, a, b);
    i2_[i + 1] = i2_[i] + i1_[i] * (b - a) + integrate_density(w, a, b, [b](double u) { return b - u; });
  }
}

std::pair<double, double> CumulativeTable::at(double t) const {
  const WeightSpec& w = *weight_;
  require_inside(w, t);
  if (t < grid_.front()) {
    return {integrate_density(w, w.lower(), t), integrate_density(w, w.lower(), t, [t](double u) { return t - u; })};
  }
  const auto it = std::upper_bound(grid_.begin(), grid_.end(), t);
  const std::size_t i = static_cast<std::size_t>(it - grid_.begin()) - 1;
  const double a = grid_[i];
  if (t == a) return {i1_[i], i2_[i]};
  const double i1 = i1_[i] + integrate_density(w, a, t);
  const double i2 = i2_[i] + i1_[i] * (t - a) + integrate_density(w, a, t, [t](double u) { return t - u; });
  return {i1, i2};
}

std::vector<double> default_grid(const WeightSpec& w, int n) {
  if (n < 2) fail(ErrorKind::Precondition, "default_grid: need at least two points");
  std::vector<double> grid(static_cast<std::size_t>(n));
  if (!w.lower_infinite()) {
    const double x0 = -6.0;
    const double x1 = std::log10(60.0);
    for (int i = 0; i < n; ++i) {
      grid[static_cast<std::size_t>(i)] = w.lower() + std::pow(10.0, x0 + (x1 - x0) * i / (n - 1));
    }
    return grid;
  }
  // The normalized margin of the inequality tends to zero as t -> -inf, so
  // the grid starts where the density is 1e-6 of its peak.
  const Extent e = density_extent(w, kLog1e6, 2.0 * kLog1e6);
  for (int i = 0; i < n; ++i) grid[static_cast<std::size_t>(i)] = e.lo + (e.hi - e.lo) * i / (n - 1);
  return grid;
}

namespace {

void validate_grid(const WeightSpec& w, const std::vector<double>& grid) {
  if (grid.size() < 64) fail(ErrorKind::Precondition, "admissibility check needs at least 64 grid points");
  for (double t : grid) require_inside(w, t);
}

double peak_location(const WeightSpec& w) { return density_extent(w, kLog1e6, kLog1e6).peak; }

}  // namespace

AdmissibilityReport check_cA(const WeightSpec& w, const std::vector<double>& grid) {
  validate_grid(w, grid);
  AdmissibilityReport rep;
  rep.grid = grid;
  CumulativeTable table(w, grid);
  rep.margins.resize(grid.size());
  double worst = kInf;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double lhs = table.I1()[i] * table.I1()[i];
    const double rhs = w.density(grid[i]) * table.I2()[i];
    const double m = (lhs - rhs) / rhs;
    rep.margins[i] = m;
    worst = std::min(worst, m);
  }
  rep.margin_cA = worst;
  rep.holds_cA = worst > kStrictMargin;
  rep.boundary_value = boundary_value(w);
  rep.total_integral = weight_moment(w, 0);
  rep.sufficient_condition = w.lower_infinite() && check_sufficient(w, peak_location(w));
  return rep;
}

AdmissibilityReport check_cA_delta(const WeightSpec& w, double delta, const std::vector<double>& grid) {
  if (!(delta > 0.0)) fail(ErrorKind::Precondition, "delta must be positive");
  if (w.lower_infinite()) fail(ErrorKind::Precondition, "the delta inequality needs A finite");
  validate_grid(w, grid);
  const double b0 = boundary_value(w);
  if (b0 == 0.0 || !std::isfinite(b0)) {
    fail(ErrorKind::Precondition, w.name + ": hypothesis c_A(-A)e^A != 0 (and finite) is not met");
  }
  AdmissibilityReport rep;
  rep.grid = grid;
  rep.delta = delta;
  rep.boundary_value = b0;
  rep.total_integral = weight_moment(w, 0);
  const double a = b0 / delta;
  const double b = a / delta;
  CumulativeTable table(w, grid);
  rep.margins.resize(grid.size());
  double worst = kInf;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double d = a + table.I1()[i];
    const double n = a * (grid[i] + w.A) + table.I2()[i] + b;
    const double rhs = w.density(grid[i]) * n;
    const double m = (d * d - rhs) / rhs;
    rep.margins[i] = m;
    worst = std::min(worst, m);
  }
  rep.margin_cA_delta = worst;
  rep.holds_cA_delta = worst > kStrictMargin;
  return rep;
}

bool check_sufficient(const WeightSpec& w, double a) {
  if (!w.lower_infinite()) return false;
  const Extent e = density_extent(w, kLog1e6, 2.0 * kLog1e6);
  if (!(a > e.lo && a < e.hi)) return false;
  auto d1 = [&](double t) {
    const double h = 1e-4 * (1.0 + std::abs(t));
    return (w.log_density(t + h) - w.log_density(t - h)) / (2.0 * h);
  };
  auto d2 = [&](double t) {
    const double h = 1e-3 * (1.0 + std::abs(t));
    return (w.log_density(t + h) - 2.0 * w.log_density(t) + w.log_density(t - h)) / (h * h);
  };
  const int n = 400;
  for (int i = 0; i < n; ++i) {
    const double t = e.lo + (a - e.lo) * (i + 0.5) / n;
    if (!(d1(t) > 0.0) || !(d2(t) < 0.0)) return false;
  }
  for (int i = 0; i <= n; ++i) {
    const double t = a + (e.hi - a) * i / n;
    if (d1(t) > 1e-7) return false;
  }
  return true;
}

WeightSpec approximate_weight(const WeightSpec& w, double B) {
  if (!(B > 0.0)) fail(ErrorKind::Precondition, "approximate_weight: B must be positive");
  if (w.lower_infinite()) fail(ErrorKind::Precondition, "approximate_weight: only finite A is supported");
  const auto base = check_cA(w, default_grid(w));
  if (!base.holds_cA) fail(ErrorKind::Admissibility, w.name + ": weight does not satisfy the c_A inequality");

  const double tb = w.lower() + B;
  const double eps_b = std::min(1.0, B) / 10.0;
  const double te = tb + eps_b;
  const double c0 = w.eval(tb);
  // c' = (g' + g) e^t
  const double dc0 = (w.density_derivative(tb) + w.density(tb)) * std::exp(tb);
  const double target = 0.5 / B;

  struct Tail {
    double c0, dc0, tb, te, kappa, lambda;
    double tail(double t) const { return c0 * (kappa + (1.0 - kappa) * std::exp(-lambda * (t - tb))); }
    double dtail(double t) const { return -c0 * lambda * (1.0 - kappa) * std::exp(-lambda * (t - tb)); }
    double operator()(double t) const {
      if (t >= te) return tail(t);
      // Cubic Hermite from (c0, dc0) at tb to the tail at te.
      const double h = te - tb;
      const double x = (t - tb) / h;
      const double h00 = (1 + 2 * x) * (1 - x) * (1 - x);
      const double h10 = x * (1 - x) * (1 - x);
      const double h01 = x * x * (3 - 2 * x);
      const double h11 = x * x * (x - 1);
      return h00 * c0 + h10 * h * dc0 + h01 * tail(te) + h11 * h * dtail(te);
    }
  };
  auto tail_integral = [&](const Tail& tl) {
    return checked_integral([&](double t) { return tl(t) * std::exp(-t); }, tb, kInf, {}).value;
  };

  Tail chosen{c0, dc0, tb, te, 1.0, 1.0};
  bool ok = false;
  for (double lambda = 1.0; lambda <= 1e6 && !ok; lambda *= 4.0) {
    Tail t0{c0, dc0, tb, te, 0.0, lambda};
    Tail t1{c0, dc0, tb, te, 1.0, lambda};
    const double i0 = tail_integral(t0);
    const double i1 = tail_integral(t1);
    double kappa = (target - i0) / (i1 - i0);
    if (kappa <= 0.0) continue;
    kappa = std::min(kappa, 1.0);
    Tail tl{c0, dc0, tb, te, kappa, lambda};
    bool positive = true;
    for (int i = 0; i <= 200; ++i) positive = positive && tl(tb + eps_b * i / 200.0) > 0.0;
    if (!positive) continue;
    chosen = tl;
    ok = true;
  }
  if (!ok) {
    fail(ErrorKind::Construction,
         w.name + ": no positive tail with weighted integral below 1/B; try a larger B");
  }

  WeightSpec out;
  std::ostringstream name;
  name << "approx(" << w.name << "," << B << ")";
  out.name = name.str();
  out.A = w.A;
  out.endpoint = w.endpoint;
  out.log_density = [ld = w.log_density, chosen, tb](double t) {
    if (t <= tb) return ld(t);
    return std::log(chosen(t)) - t;
  };

  const auto rep = check_cA(out, default_grid(out));
  if (!rep.holds_cA) fail(ErrorKind::Construction, out.name + ": splice violates the c_A inequality");
  const double tail = tail_integral(chosen);
  if (!(tail < 1.0 / B)) fail(ErrorKind::Construction, out.name + ": tail integral is not below 1/B");
  return out;
}

}  // namespace l2ext
