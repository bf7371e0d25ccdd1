#pragma once

#include <complex>

namespace l2ext {

using cplx = std::complex<double>;

/// Unit disc or annulus q < |z| < 1 with series truncation order N.
class PlanarDomain {
 public:
  enum class Kind { UnitDisc, Annulus };

  static PlanarDomain disc();
  static PlanarDomain annulus(double q, int N = 60);

  Kind kind() const { return kind_; }
  double q() const { return q_; }
  int order() const { return N_; }
  bool contains(cplx z) const;

 private:
  PlanarDomain(Kind k, double q, int N) : kind_(k), q_(q), N_(N) {}
  Kind kind_;
  double q_;
  int N_;
};

/// Green function with pole z0 (negative inside, zero on the boundary).
double green(const PlanarDomain& dom, cplx z, cplx z0);

/// Regular part G(z, z0) - log|z - z0| evaluated exactly at z = z0 from the
/// series (the Robin constant, log c_beta).
double robin_constant(const PlanarDomain& dom, cplx z0);

struct CapacityEstimate {
  double value = 0.0;          // c_beta(z0)
  double log_value = 0.0;
  double extrapolation_spread = 0.0;
};

/// c_beta(z0) = exp lim_{z -> z0} (G(z, z0) - log|z - z0|), by Richardson
/// extrapolation along four rays.
CapacityEstimate log_capacity(const PlanarDomain& dom, cplx z0);

struct BergmanValue {
  double value = 0.0;
  double tail_bound = 0.0;
};

/// Bergman kernel on the diagonal for the plain area measure.
BergmanValue bergman(const PlanarDomain& dom, cplx z0);

/// Partial sum of the disc monomial series sum_j (j+1) |z0|^{2j} / pi.
double bergman_disc_series(cplx z0, int terms);

struct SuitaRecord {
  cplx z0;
  double c_beta = 0.0;
  double bergman = 0.0;
  double gap = 0.0;  // pi B - c_beta^2
  double truncation_error_bound = 0.0;
  bool holds = false;  // disc: |gap| <= 1e-9; annulus: gap > bound
};

SuitaRecord suita_check(const PlanarDomain& dom, cplx z0);

/// Analytic capacity on the disc through the Moebius extremal function.
double analytic_capacity_disc(cplx z0);
double analytic_capacity(const PlanarDomain& dom, cplx z0);

/// Adjoint L-kernel (2/pi) d^2 G / dz dt; the disc case is 1/(pi (z-t)^2).
cplx l_kernel(const PlanarDomain& dom, cplx z, cplx t);

struct ZeroCount {
  int zeros = 0;
  double winding_outer = 0.0;
  double winding_inner = 0.0;
  int samples = 0;
};

/// Zeros of L(., t) in the domain by the argument principle, accounting for
/// the double pole at t.
ZeroCount l_kernel_zero_count(const PlanarDomain& dom, cplx t);

}  // namespace l2ext
