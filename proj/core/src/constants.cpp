#include "l2ext/constants.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "l2ext/error.hpp"
#include "l2ext/extremal.hpp"
#include "l2ext/quadrature.hpp"
#include "l2ext/weights.hpp"

namespace l2ext {
namespace {

constexpr double kPi = std::numbers::pi;

double rel(double x, double y) {
  const double s = std::max(std::abs(x), std::abs(y));
  return s == 0.0 ? 0.0 : std::abs(x - y) / s;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::string params(std::initializer_list<std::pair<const char*, double>> kv) {
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (const auto& [k, v] : kv) {
    if (!first) os << ";";
    os << k << "=" << v;
    first = false;
  }
  return os.str();
}

quad::Tolerance tight() {
  quad::Tolerance t;
  t.rel = 1e-14;
  return t;
}

}  // namespace

double ConstantReport::spread() const {
  return std::max({rel(closed_form, master), rel(closed_form, quadrature), rel(master, quadrature)});
}

double pairing_factor(int m) { return std::pow(2.0, m); }

double extension_prefactor(int m) { return ball_volume(m); }

double ohsawa2_closed_form(int m, double eps) {
  if (m < 1 || !(eps > 0.0)) fail(ErrorKind::Precondition, "ohsawa2 needs m >= 1 and eps > 0");
  double sum = 0.0;
  for (int j = 0; j <= m - 1; ++j) {
    const int e = m - 1 - j;
    sum += binomial(m - 1, j) * (e % 2 == 0 ? 1.0 : -1.0) / (e + eps);
  }
  return m * sum;
}

ConstantReport ohsawa2_constant(int m, double eps) {
  ConstantReport r;
  r.id = "ohsawa2";
  r.parameters = params({{"m", m}, {"eps", eps}});
  r.closed_form = ohsawa2_closed_form(m, eps);
  const WeightSpec w = weight_ohsawa2(m, eps);
  r.master = boundary_value(w) + weight_moment(w, 0);
  // u = e^{-t/m}: int_0^inf m u^{m-1} (1 + u)^{-m-eps} du.
  const double mm = m;
  r.quadrature = quad::integrate(
                     [mm, eps](double u) {
                       return std::exp(std::log(mm) + (mm - 1.0) * std::log(u) - (mm + eps) * std::log1p(u));
                     }, 0.0,
                     kInf, tight())
                     .value;
  return r;
}

ConstantReport concise_constant(double eps) {
  if (!(eps > 0.0)) fail(ErrorKind::Precondition, "concise needs eps > 0");
  ConstantReport r;
  r.id = "concise";
  r.parameters = params({{"eps", eps}});
  r.closed_form = 1.0 / eps;
  const WeightSpec w = weight_concise(eps);
  r.master = boundary_value(w) + weight_moment(w, 0);
  r.quadrature =
      quad::integrate([eps](double u) { return std::exp((-1.0 - eps) * std::log1p(u)); }, 0.0, kInf, tight()).value;
  return r;
}

BernReport bern_constant(int m) {
  if (m < 1) fail(ErrorKind::Precondition, "bern_constant needs m >= 1");
  BernReport b;
  b.value = std::pow(2.0 * kPi, m) / std::tgamma(m + 1.0);
  b.cross_check = pairing_factor(m) * radial_integral(ModelBall::plain_ball(m, 0.0), weight_const());
  return b;
}

DhpReport dhp_constant(double alpha, double b, double M) {
  if (!(alpha >= 1.0) || !(b > 0.0 && b <= 1.0) || !(M > 0.0)) {
    fail(ErrorKind::Precondition, "dhp_constant needs alpha >= 1, 0 < b <= 1, M > 0");
  }
  DhpReport d;
  const double scale = 2.0 * kPi * std::pow(M, 1.0 - b);
  const double e = std::exp(-b * alpha);
  d.boundary_term_closed = alpha * e;
  d.integral_term_closed = e / b;
  const WeightSpec w = weight_dhp(b, alpha);
  const double delta = 1.0 / alpha;
  d.boundary_term = boundary_value(w) / delta;
  d.integral_term = weight_moment(w, 0);
  d.report.id = "dhp";
  d.report.parameters = params({{"alpha", alpha}, {"b", b}, {"M", M}});
  d.report.closed_form = scale * (d.boundary_term_closed + d.integral_term_closed);
  d.report.master = scale * (d.boundary_term + d.integral_term);
  const double direct = quad::integrate([b](double t) { return std::exp(-b * t); }, alpha, kInf, tight()).value;
  d.report.quadrature = scale * (alpha * std::exp(-b * alpha) + direct);
  return d;
}

ConstantReport demailly_constant(double r) {
  if (!(r > 0.0)) fail(ErrorKind::Precondition, "demailly_constant needs r > 0");
  ConstantReport c;
  c.id = "demailly";
  c.parameters = params({{"r", r}});
  c.closed_form = 3.0 / (4.0 * r);
  const WeightSpec w = weight_demailly(r);
  const double delta = 1.0 / r;
  c.master = boundary_value(w) / delta + weight_moment(w, 0);
  // c(-A) e^{A} = (2r)^{-2}; the integral is int_{2r}^inf t^{-2} dt.
  const double boundary = 1.0 / (4.0 * r * r);
  c.quadrature =
      boundary * r + quad::integrate([](double t) { return 1.0 / (t * t); }, 2.0 * r, kInf, tight()).value;
  return c;
}

MvReport mv_class_check(const std::function<double(double)>& g, double delta) {
  if (!(delta > 0.0)) fail(ErrorKind::Precondition, "mv_class_check needs delta > 0");
  MvReport rep;
  auto inv = [&](double t) { return 1.0 / g(t); };
  try {
    rep.C = quad::integrate(inv, 1.0, kInf, tight()).value;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NonIntegrableWeight) {
      fail(ErrorKind::ClassViolation, "C(g) = int_1^inf dt/g(t) diverges");
    }
    throw;
  }
  if (!std::isfinite(rep.C) || !(rep.C > 0.0)) fail(ErrorKind::ClassViolation, "C(g) is not a positive finite number");

  const int n = 601;
  rep.grid.resize(n);
  for (int i = 0; i < n; ++i) rep.grid[static_cast<std::size_t>(i)] = std::pow(10.0, 6.0 * i / (n - 1));
  std::vector<double> J(n, 0.0);  // int_1^x dt/g
  for (int i = 1; i < n; ++i) {
    J[static_cast<std::size_t>(i)] =
        J[static_cast<std::size_t>(i - 1)] +
        quad::integrate(inv, rep.grid[static_cast<std::size_t>(i - 1)], rep.grid[static_cast<std::size_t>(i)], tight())
            .value;
  }
  const double C = rep.C;
  auto H = [&](double Jy) { return (1.0 + delta / C * Jy) / (1.0 + delta); };
  double gd = 0.0;
  const std::vector<quad::Node> rule = quad::gauss_legendre(16);
  rep.K_delta = 1.0 / g(1.0);
  rep.K_delta_argmax = 1.0;
  for (int i = 1; i < n; ++i) {
    const double x0 = rep.grid[static_cast<std::size_t>(i - 1)];
    const double x1 = rep.grid[static_cast<std::size_t>(i)];
    const double J0 = J[static_cast<std::size_t>(i - 1)];
    // Cells are short (ratio 10^0.01), so fixed Gauss rules resolve both
    // integrals to rounding level.
    auto integrand = [&](double y) {
      double Jy = J0;
      const double half = 0.5 * (y - x0);
      for (const auto& nd : rule) Jy += half * nd.w * inv(x0 + half * (nd.x + 1.0));
      const double h = H(Jy);
      return (1.0 - h) / h;
    };
    const double cell = 0.5 * (x1 - x0);
    for (const auto& nd : rule) gd += cell * nd.w * integrand(x0 + cell * (nd.x + 1.0));
    const double k = (x1 + gd) / g(x1);
    if (k > rep.K_delta) {
      rep.K_delta = k;
      rep.K_delta_argmax = x1;
    }
  }
  rep.old_constant = 4.0 * (rep.K_delta + (1.0 + delta) / delta * C) / C;
  rep.new_constant = 1.0;
  const WeightSpec w = weight_mv("mv(custom)", g);
  rep.weight_admissible = check_cA(w, default_grid(w)).holds_cA;
  return rep;
}

LimitingReport limiting_bound(double alpha) {
  if (!(alpha > -1.0)) fail(ErrorKind::Precondition, "limiting_bound needs alpha > -1");
  LimitingReport r;
  r.alpha = alpha;
  r.integral = weight_moment(weight_limiting(alpha), 0);
  r.bound = (2.0 + alpha) / (1.0 + alpha);
  r.below_bound = r.integral < r.bound;
  r.scaled = (1.0 + alpha) * r.integral;
  return r;
}

std::vector<ConstantReport> all_constants() {
  std::vector<ConstantReport> out;
  for (int m : {1, 2, 3}) {
    for (double eps : {0.5, 1.0, 2.0}) out.push_back(ohsawa2_constant(m, eps));
  }
  for (double eps : {0.25, 1.0, 2.0}) out.push_back(concise_constant(eps));
  for (double alpha : {1.0, 2.0}) {
    for (double b : {0.25, 0.5, 1.0}) out.push_back(dhp_constant(alpha, b, 1.0).report);
  }
  for (double r : {1.0, 2.0}) out.push_back(demailly_constant(r));
  return out;
}

}  // namespace l2ext
