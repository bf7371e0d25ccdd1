#pragma once

#include <complex>
#include <vector>

#include "l2ext/weights.hpp"

namespace l2ext {

/// Extremal configuration on the ball of radius e^{A/(2m)} in C^m:
///   phi = (1+delta) m max(log|z|^2, log a^2),
///   Psi = -m max(log|z|^2, log a^2) + m log|z|^2 + A - eps.
/// The plain variant has phi = 0 and Psi = m log|z|^2.
struct ModelBall {
  int m = 1;
  double A = 0.0;
  double a = 0.1;
  double delta = 1.0;
  double eps = 0.0;
  bool plain = false;

  static ModelBall plain_ball(int m, double A = 0.0);

  double radius() const;
  double phi(double r) const;
  double Psi(double r) const;
  /// Radial density c(-Psi) e^{-phi} at |z| = r.
  double density(const WeightSpec& w, double r) const;
  /// Throws Precondition on invalid parameters and Consistency if the
  /// sampled invariants (Psi < A, convexity in log r) fail.
  void validate() const;
};

/// pi^m / m!, the volume of the unit ball in C^m.
double ball_volume(int m);

struct RadialIntegral {
  double closed_form = 0.0;
  double quadrature = 0.0;
};

/// int_ball c(-Psi) e^{-phi} d lambda two ways; throws Consistency when they
/// disagree by more than 1e-8 relative.
RadialIntegral radial_integral_both(const ModelBall& ball, const WeightSpec& w);
double radial_integral(const ModelBall& ball, const WeightSpec& w);

/// int_0^R W(r) r^{n + 2m - 1} dr for the ball's radial density W.
double radial_moment(const ModelBall& ball, const WeightSpec& w, int n);

struct LeastNormResult {
  std::vector<std::vector<int>> multi_indices;  // index 0 is the zero multi-index
  std::vector<std::complex<double>> coefficients;
  double value = 0.0;           // generic constrained solve
  double diagonal_value = 0.0;  // |f0|^2 M_0
  double max_higher = 0.0;      // max |a_k|, k != 0
  double min_eigen_scaled = 0.0;
  int iterations = 0;
};

struct LeastNormOptions {
  int K = 8;
  /// Start point perturbation for the iterative solve (0 = start at zero).
  double start_perturbation = 0.0;
};

/// Minimizes sum_k |a_k|^2 M_k over polynomials of total degree <= K with
/// a_0 = f0, using a numerically assembled Gram matrix of monomials.
LeastNormResult least_norm_extension(const ModelBall& ball, const WeightSpec& w, std::complex<double> f0,
                                     const LeastNormOptions& opts = {});

/// min value / (a^{-2 m delta} e^{eps - A}) divided by
/// pi^m/m! (int_{-A+eps}^inf c e^{-t} + c(-A+eps) e^{A-eps} / delta).
double optimality_ratio(int m, const WeightSpec& w, double delta, double A, double a, double eps);

/// (a^{-2 delta} - e^{-delta A}) / (delta a^{-2 delta}); tends to 1/delta.
double boundary_sublimit(double a, double delta, double A);

struct CrossingPair {
  RealFn d1;
  RealFn d2;
  double r1 = 3.0;
  double r2 = 2.0;
  double r3 = 1.0;
  double up = 0.0;    // amplitude added on (r3, r2)
  double down = 0.0;  // amplitude removed on (r2, r1)
};

/// Smooth bump supported in (lo, hi) with peak 1.
double window_bump(double t, double lo, double hi);

/// Raises d1 on (r3, r2) and lowers it on (r2, r1) with equal weighted mass.
/// `up` is the starting amplitude; it is halved until d2 e^{-t} decreases.
CrossingPair build_crossing(const RealFn& d1, double r1, double r2, double r3, double up = 0.2);

/// int_0^inf d e^{-(k+1) t} dt.
double crossing_moment(const RealFn& d, int k);

struct MomentReport {
  bool strict = false;
  int first_failure = -1;
  double k0_difference = 0.0;
  std::vector<double> differences;  // moment(d2) - moment(d1), k = 0..k_max
};

MomentReport moment_dominance(const CrossingPair& pair, int k_max);

/// int over the unit disc of |sum_j a_j z^j|^2 d(-log|z|^2) d lambda by polar
/// quadrature (trapezoid in the angle, adaptive in the radius).
double disc_polynomial_norm(const RealFn& d, const std::vector<std::complex<double>>& coeffs);

struct DiscTailReport {
  double constant = 0.0;  // max_j ratio
  std::vector<double> ratios;
  double bound = 0.0;  // 1 / (1 - r^2)
};

DiscTailReport disc_tail_constant(double r, int j_max);

}  // namespace l2ext
