#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "l2ext/quadrature.hpp"

namespace l2ext {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

using RealFn = std::function<double(double)>;

/// Closed-form value attached to a weight, with a short description of where
/// it comes from.
struct AnalyticValue {
  double value;
  std::string anchor;
};

/// Power-type behaviour of the density at the lower end:
/// c(t) e^{-t} = d^beta * regular(d) with d = t + A.
struct EndpointPower {
  double beta;
  RealFn regular;
};

/// Positive weight c_A on (-A, +inf). A may be +inf.
///
/// The primary representation is the log-density log(c(t) e^{-t}), which
/// stays finite where c and e^{-t} separately over- or underflow.
struct WeightSpec {
  std::string name;
  double A = 0.0;
  RealFn log_density;
  std::optional<AnalyticValue> analytic_integral;
  RealFn density_d1;      // optional: d/dt (c e^{-t})
  RealFn log_density_d2;  // optional: d^2/dt^2 log(c e^{-t})
  std::optional<EndpointPower> endpoint;

  double lower() const { return -A; }
  bool lower_infinite() const { return A == kInf; }
  /// c(t); throws Domain outside (-A, inf) and PositivityViolation if c <= 0.
  double eval(double t) const;
  /// c(t) e^{-t}.
  double density(double t) const;
  /// d/dt (c e^{-t}), analytic when available, otherwise central difference.
  double density_derivative(double t) const;
};

/// Builds a weight from c directly (log-density = log c(t) - t).
WeightSpec make_weight(std::string name, double A, RealFn c);

/// int_lo^hi kernel(t) c(t) e^{-t} dt, handling an infinite upper end, an
/// infinite lower end and a power-type singularity at -A.
double integrate_density(const WeightSpec& w, double lo, double hi, const RealFn& kernel = {},
                         const quad::Tolerance& tol = {});

/// int_{-A}^inf c(t) e^{-(k+1)t} dt.
double weight_moment(const WeightSpec& w, int k);

/// lim_{t -> -A+} c(t) e^{-t}; zero when A = +inf.
double boundary_value(const WeightSpec& w);

/// Running integrals I1(t) = int_{-A}^t g and I2(t) = int_{-A}^t I1 on a
/// sorted grid, filled in a single sweep.
class CumulativeTable {
 public:
  CumulativeTable(const WeightSpec& w, std::vector<double> grid);

  const std::vector<double>& grid() const { return grid_; }
  const std::vector<double>& I1() const { return i1_; }
  const std::vector<double>& I2() const { return i2_; }
  /// I1, I2 at an arbitrary t >= -A, continued from the nearest node below.
  std::pair<double, double> at(double t) const;
  const WeightSpec& weight() const { return *weight_; }

 private:
  std::shared_ptr<const WeightSpec> weight_;
  std::vector<double> grid_;
  std::vector<double> i1_;
  std::vector<double> i2_;
};

struct AdmissibilityReport {
  bool holds_cA = false;
  double margin_cA = 0.0;
  bool holds_cA_delta = false;
  double margin_cA_delta = 0.0;
  std::optional<double> delta;
  bool sufficient_condition = false;
  double boundary_value = 0.0;
  double total_integral = 0.0;
  std::vector<double> grid;
  std::vector<double> margins;  // per-point normalized margin of the checked inequality
};

/// Strictness threshold for the normalized margins.
inline constexpr double kStrictMargin = 1e-12;

/// Default sampling grid: log-spaced from -A when A is finite, otherwise
/// spread over the region where the density is non-negligible.
std::vector<double> default_grid(const WeightSpec& w, int n = 256);

AdmissibilityReport check_cA(const WeightSpec& w, const std::vector<double>& grid);
AdmissibilityReport check_cA_delta(const WeightSpec& w, double delta, const std::vector<double>& grid);

/// Finite-difference test of the log-concave, rise-then-fall sufficient
/// condition. Returns false on any violation, including A finite.
bool check_sufficient(const WeightSpec& w, double a);

/// Splice of w: equal to w on (-A, -A+B], then a positive decreasing tail
/// whose weighted integral is below 1/B.
WeightSpec approximate_weight(const WeightSpec& w, double B);

/// Two-column (t, c) table with strictly increasing t, interpolated by a
/// monotone cubic and held constant past the last sample.
WeightSpec weight_from_table(std::string name, double A, const std::vector<double>& t,
                             const std::vector<double>& c);
WeightSpec load_weight_table(const std::string& path, double A);

// Catalog ------------------------------------------------------------------

WeightSpec weight_const(double A = 0.0);
WeightSpec weight_ohsawa2(int m, double eps);
WeightSpec weight_concise(double eps);
WeightSpec weight_demailly(double r);
WeightSpec weight_dhp(double b, double alpha);
WeightSpec weight_limiting(double alpha);
/// c_{-1}(t) = e^t / gain(t) on (1, inf).
WeightSpec weight_mv(std::string name, RealFn gain);
WeightSpec weight_mv_power(double p);
/// c(t) = 1 + 99 bump((t - 1) / 0.1) on (0, inf); violates both inequalities.
WeightSpec weight_bump();

/// Smooth bump exp(1 - 1/(1 - x^2)) on (-1, 1), peak 1 at x = 0.
double smooth_bump(double x);

/// Parses a catalog name such as "ohsawa2(2,1)" or "mv(1.5)"; "mv(<path>)"
/// loads a gain table. Throws Config on unknown names.
WeightSpec weight_by_name(const std::string& spec);

struct CatalogEntry {
  std::string name;
  std::string description;
};
std::vector<CatalogEntry> weight_catalog();

}  // namespace l2ext
