#include "l2ext/mollifier.hpp"

#include <algorithm>
#include <cmath>

#include "l2ext/error.hpp"
#include "l2ext/weights.hpp"

namespace l2ext {
namespace {

constexpr int kPanels = 16;
constexpr int kNodes = 20;

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

Mollifier::Mollifier(double t0, double eps)
    : t0_(t0), eps_(eps), kappa_(std::min(eps / 4.0, 0.25 - eps)), nodes_(quad::gauss_legendre(kNodes)) {
  if (!(eps > 0.0 && eps < 0.25)) fail(ErrorKind::Precondition, "mollifier needs 0 < eps < 1/4");
  a0_ = -t0 - 1.0 + eps + kappa_;
  b0_ = -t0 - eps - kappa_;
  rho_norm_ = 1.0;
  rho_norm_ = R(1, kappa_);
  v_at_zero_ = 0.0;
  v_at_zero_ = v(0.0);
}

double Mollifier::R(int k, double x) const {
  const double hi = std::min(x, kappa_);
  if (hi <= -kappa_) return 0.0;
  const double lo = -kappa_;
  const double width = (hi - lo) / kPanels;
  const double fact = factorial(k - 1);
  double sum = 0.0;
  for (int p = 0; p < kPanels; ++p) {
    const double mid = lo + (p + 0.5) * width;
    for (const auto& nd : nodes_) {
      const double y = mid + 0.5 * width * nd.x;
      const double rho = smooth_bump(y / kappa_);
      sum += 0.5 * width * nd.w * std::pow(x - y, k - 1) / fact * rho;
    }
  }
  return sum / rho_norm_;
}

double Mollifier::v(double t) const {
  const double len = b0_ - a0_;
  return (R(3, t - a0_) - R(3, t - b0_)) / len - v_at_zero_;
}

double Mollifier::dv(double t) const {
  const double len = b0_ - a0_;
  return (R(2, t - a0_) - R(2, t - b0_)) / len;
}

double Mollifier::d2v(double t) const {
  const double len = b0_ - a0_;
  return (R(1, t - a0_) - R(1, t - b0_)) / len;
}

double Mollifier::db(double t) const { return std::clamp(t + t0_ + 1.0, 0.0, 1.0); }

double Mollifier::b(double t) const {
  auto B = [this](double x) {
    const double lo = -t0_ - 1.0;
    if (x <= lo) return 0.0;
    if (x <= -t0_) return 0.5 * (x - lo) * (x - lo);
    return 0.5 + (x + t0_);
  };
  return B(t) - B(0.0);
}

Mollifier make_mollifier(double t0, double eps) { return Mollifier(t0, eps); }

MollifierReport check_mollifier(const Mollifier& m, int n) {
  MollifierReport rep;
  rep.linear_above = rep.constant_below = rep.slope_bounds = rep.curvature_bounds = true;
  const double lo = -m.t0() - 2.0;
  const double hi = -m.t0() + 1.0;
  const double tol = 1e-12;
  const double v_left = m.v(lo - 1.0);
  for (int i = 0; i < n; ++i) {
    const double t = lo + (hi - lo) * i / (n - 1);
    const double v = m.v(t);
    const double dv = m.dv(t);
    const double d2v = m.d2v(t);
    if (t >= -m.t0() - m.eps() && std::abs(v - t) > tol * (1.0 + std::abs(t))) rep.linear_above = false;
    if (t < -m.t0() - 1.0 + m.eps() && (std::abs(dv) > tol || std::abs(v - v_left) > tol)) rep.constant_below = false;
    if (dv < -tol || dv > 1.0 + tol) rep.slope_bounds = false;
    if (d2v < -tol || d2v > 2.0 + tol) rep.curvature_bounds = false;
    rep.sup_dist_v = std::max(rep.sup_dist_v, std::abs(v - m.b(t)));
    rep.sup_dist_dv = std::max(rep.sup_dist_dv, std::abs(dv - m.db(t)));
  }
  return rep;
}

}  // namespace l2ext
