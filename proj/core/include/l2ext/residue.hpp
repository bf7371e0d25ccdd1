#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace l2ext {

/// Volume of the unit sphere S^m in R^{m+1}: 2 pi^{(m+1)/2} / Gamma((m+1)/2).
double sphere_volume(int m);

/// Polar configuration in the unit polydisc of C^n, n in {1, 2}.
///
/// Coordinates are split as (x, w) with x in C^l along S = {w = 0} and
/// w in C^{n-l} normal to it; Psi = (n-l) log|w|^2 + psi(x, w).
struct PolarConfig {
  using Point = std::vector<std::complex<double>>;  // (x..., w...)

  int n = 1;
  int l = 0;
  std::function<double(const Point&)> psi;
  std::function<double(const Point&)> f;
  /// Radius of the disc in S (l = 1) outside which f vanishes on the slab.
  double s_radius = 1.0;
  /// Angular resolution; total nodes are reported by slab_integral.
  int n_theta = 128;
  int n_s = 24;
  int n_alpha = 24;
  int n_x_radial = 24;

  int normal_dim() const { return n - l; }
  double Psi(const Point& p) const;
};

struct SlabValue {
  double value = 0.0;
  long nodes = 0;
};

/// (2d / sigma_{2d-1}) int f e^{-Psi} 1{-1-t < Psi < -t} dV with d = n - l.
SlabValue slab_integral(const PolarConfig& cfg, double t);

/// int_S f e^{-psi} d lambda' by direct quadrature on S.
double residue_target(const PolarConfig& cfg);

struct ResidueLimit {
  double limit = 0.0;
  double target = 0.0;
  double relative_error = 0.0;
  std::vector<double> t;
  std::vector<double> slab;
  std::vector<double> fit_residuals;
  bool monotone_warning = false;
};

/// Extrapolates slab values by a least-squares fit L + c e^{-t/2}.
ResidueLimit residue_limit(const PolarConfig& cfg, const std::vector<double>& t_list);

struct ResidueCase {
  std::string name;
  PolarConfig config;
  std::vector<double> t_list;
};

/// The three built-in configurations: a twisted point in C, a disc in
/// {w = 0} of C^2 and a Gaussian at the origin of C^2.
std::vector<ResidueCase> residue_cases();

}  // namespace l2ext
