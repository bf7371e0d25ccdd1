#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "l2ext/weights.hpp"

namespace l2ext {

/// Closed-form solution (u, s) of the twisting ODE system for a weight.
///
///   D(t) = a + int_{-A}^t c e^{-t1} dt1,   u = -log D,
///   N(t) = int_{-A}^t D + b,               s = N / D,
///
/// with a = c_A(-A)e^A / delta and b = a / delta, or a = b = 0 without delta.
class OdeSolution {
 public:
  OdeSolution(const WeightSpec& w, std::optional<double> delta, std::vector<double> grid);

  double A() const { return table_->weight().A; }
  std::optional<double> delta() const { return delta_; }
  double a() const { return a_; }
  double b() const { return b_; }
  double total_constant() const { return total_; }
  const WeightSpec& weight() const { return table_->weight(); }

  double D(double t) const;
  double N(double t) const;
  double u(double t) const;
  double s(double t) const;

  struct Derivatives {
    double u, du, d2u;
    double s, ds, d2s;
  };
  /// Values and first two derivatives from the analytic formulas.
  Derivatives derivatives(double t) const;

  /// Rows (t, u, s) on the given grid.
  std::vector<std::vector<double>> table(const std::vector<double>& grid) const;

 private:
  std::shared_ptr<const CumulativeTable> table_;
  std::optional<double> delta_;
  double a_ = 0.0;
  double b_ = 0.0;
  double total_ = 0.0;
};

struct SolveOptions {
  bool check_admissibility = true;
  int grid_points = 256;
};

/// Builds the solution after checking the relevant inequality; violations
/// raise ErrorKind::Admissibility naming the offending t.
OdeSolution solve_ode(const WeightSpec& w, std::optional<double> delta, const SolveOptions& opts = {});

enum class DerivativeMode { Analytic, FiniteDifference };

struct ResidualReport {
  double max_residual1 = 0.0;  // |(s + s'^2/(u''s - s'')) e^{u-t} c - 1|
  double max_residual2 = 0.0;  // |s' - s u' - 1|
  double worst_t1 = 0.0;
  double worst_t2 = 0.0;
};

/// Optional additive perturbation of s, used to show the residual reacts.
ResidualReport residual_check(const OdeSolution& sol, const std::vector<double>& grid,
                              DerivativeMode mode = DerivativeMode::Analytic, double s_shift = 0.0);

struct PositivityReport {
  bool holds = false;         // s' > 0 and u''s - s'' > 0 everywhere
  bool signs_agree = false;   // sign(s') == sign(u''s - s'') everywhere
  std::vector<double> s_prime;    // central difference of s
  std::vector<double> curvature;  // u''s - s''
};

PositivityReport positivity_check(const OdeSolution& sol, const std::vector<double>& grid);

/// Interior grid for a solution: log-spaced off -A when A is finite.
std::vector<double> interior_grid(const WeightSpec& w, int n = 256, double span = 50.0);

struct DemaillyReport {
  bool quoted_bound_holds = false;  // quoted closed form >= t/2
  bool matches_quoted = false;      // solve_ode s within 1e-8 of the quoted form
  bool ode_bound_holds = false;     // solve_ode s >= t/2
  double max_mismatch = 0.0;
  double min_ode_excess = 0.0;      // min over grid of s(t) - t/2
  double worst_ode_t = 0.0;
  bool all() const { return quoted_bound_holds && matches_quoted && ode_bound_holds; }
};

/// The quoted expression ((1 + 1/r) t - log t - 1) / (2 - 1/t).
double demailly_quoted_s(double r, double t);

/// Compares the solution for c = e^t t^{-2}, A = -2r, delta = 1/r against
/// the quoted closed form and the bound s >= t/2.
DemaillyReport demailly_s_lower_bound(double r, const std::vector<double>& grid);

struct SpliceResult {
  WeightSpec weight;  // c_{A''} on (-A'', inf)
  double A2 = 0.0;    // A''
  double delta2 = 0.0;
  double constant_mismatch = 0.0;  // condition 2, absolute
  double min_numerator_margin = 0.0;  // condition 3, minimum over samples
};

/// Extends w from [-A', inf) down to -A'' with a steep profile so that the
/// total constant is preserved and the s-numerator dominates.
SpliceResult splice_weight(const WeightSpec& w, double A_prime);

}  // namespace l2ext
