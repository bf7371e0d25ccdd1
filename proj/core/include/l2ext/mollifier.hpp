#pragma once

#include <vector>

#include "l2ext/quadrature.hpp"

namespace l2ext {

/// Smooth convex regularization v_{t0,eps} of the piecewise quadratic b_{t0}.
///
/// v'' is the normalized indicator of J = (-t0-1+eps+kappa, -t0-eps-kappa)
/// convolved with a bump of half-width kappa = min(eps/4, 1/4 - eps), so the
/// support of v'' stays inside (-t0-1+eps, -t0-eps). v is normalized by
/// v(0) = 0.
class Mollifier {
 public:
  Mollifier(double t0, double eps);

  double t0() const { return t0_; }
  double eps() const { return eps_; }
  double kappa() const { return kappa_; }

  double v(double t) const;
  double dv(double t) const;
  double d2v(double t) const;

  double b(double t) const;
  double db(double t) const;

 private:
  // R_k(x) = int_{-kappa}^{min(x,kappa)} (x-y)^{k-1}/(k-1)! rho(y) dy.
  double R(int k, double x) const;

  double t0_;
  double eps_;
  double kappa_;
  double a0_;
  double b0_;
  double v_at_zero_;
  std::vector<quad::Node> nodes_;  // rule on [-1, 1]
  double rho_norm_ = 1.0;
};

Mollifier make_mollifier(double t0, double eps);

struct MollifierReport {
  bool linear_above = false;      // v(t) = t for t >= -t0 - eps
  bool constant_below = false;    // v' = 0 for t < -t0 - 1 + eps
  bool slope_bounds = false;      // 0 <= v' <= 1
  bool curvature_bounds = false;  // 0 <= v'' <= 2
  double sup_dist_v = 0.0;
  double sup_dist_dv = 0.0;
  double c1_distance() const { return sup_dist_v + sup_dist_dv; }
  bool all() const { return linear_above && constant_below && slope_bounds && curvature_bounds; }
};

/// Samples the defining properties at n points spanning the transition.
MollifierReport check_mollifier(const Mollifier& m, int n = 1000);

}  // namespace l2ext
