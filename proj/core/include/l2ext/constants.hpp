#pragma once

#include <functional>
#include <string>
#include <vector>

namespace l2ext {

/// One constant computed three ways.
struct ConstantReport {
  std::string id;
  std::string parameters;
  double closed_form = 0.0;
  double master = 0.0;      // (1/delta) c_A(-A)e^A + int c_A e^{-t} via the weight module
  double quadrature = 0.0;  // direct quadrature of the defining integral
  double spread() const;    // max pairwise relative difference
  bool ok(double tol = 1e-8) const { return spread() <= tol; }
};

/// 2^m: factor between the {f, f} pairing and plain Lebesgue measure.
double pairing_factor(int m);
/// pi^m / m!: extremal prefactor for c = 1, A = 0.
double extension_prefactor(int m);

ConstantReport ohsawa2_constant(int m, double eps);
/// The alternating sum m sum_j C(m-1, j) (-1)^{m-1-j} / (m-1-j+eps).
double ohsawa2_closed_form(int m, double eps);
ConstantReport concise_constant(double eps);

struct BernReport {
  double value = 0.0;        // 2^m pi^m / m!
  double cross_check = 0.0;  // pairing factor times the plain-ball integral
};
BernReport bern_constant(int m);

struct DhpReport {
  ConstantReport report;
  double boundary_term = 0.0;         // alpha e^{-b alpha}, from the weight module
  double integral_term = 0.0;         // e^{-b alpha} / b, from the weight module
  double boundary_term_closed = 0.0;
  double integral_term_closed = 0.0;
};
DhpReport dhp_constant(double alpha, double b, double M);

ConstantReport demailly_constant(double r);

struct MvReport {
  double C = 0.0;                 // int_1^inf dt / g
  double K_delta = 0.0;           // sup over the grid
  double K_delta_argmax = 0.0;
  double old_constant = 0.0;      // 4 (K_delta + (1+delta)/delta C) / C
  double new_constant = 1.0;
  bool weight_admissible = false; // check_cA on c_{-1} = e^t / g
  std::vector<double> grid;
};
MvReport mv_class_check(const std::function<double(double)>& g, double delta);

struct LimitingReport {
  double alpha = 0.0;
  double integral = 0.0;
  double bound = 0.0;  // (2 + alpha) / (1 + alpha)
  bool below_bound = false;
  double scaled = 0.0;  // (1 + alpha) * integral, stays <= 2 + alpha
};
LimitingReport limiting_bound(double alpha);

/// All catalog parameter sets, for `constants all`.
std::vector<ConstantReport> all_constants();

}  // namespace l2ext
