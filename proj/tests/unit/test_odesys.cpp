#include <gtest/gtest.h>

#include <cmath>

#include "l2ext/error.hpp"
#include "l2ext/odesys.hpp"

using namespace l2ext;

namespace {

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no l2ext::Error raised";
  return ErrorKind::Config;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(a + (b - a) * i / (n - 1));
  return g;
}

}  // namespace

TEST(OdeSolution, ConstantWeightClosedForm) {
  const OdeSolution sol = solve_ode(weight_const(), 1.0);
  EXPECT_DOUBLE_EQ(sol.a(), 1.0);
  EXPECT_DOUBLE_EQ(sol.b(), 1.0);
  EXPECT_NEAR(sol.total_constant(), 2.0, 1e-12);
  for (double t : {0.1, 1.0, 5.0, 30.0}) {
    const double D = 2.0 - std::exp(-t);
    const double N = 2.0 * t + std::exp(-t);
    EXPECT_NEAR(sol.u(t), -std::log(D), 1e-13);
    EXPECT_NEAR(sol.s(t), N / D, 1e-12 * (1.0 + t));
  }
}

TEST(OdeSolution, DemaillyClosedForm) {
  for (double r : {1.0, 2.0}) {
    const OdeSolution sol = solve_ode(weight_demailly(r), 1.0 / r);
    for (double t : {2.0 * r + 0.1, 3.0 * r, 10.0 * r}) {
      const double D = 3.0 / (4.0 * r) - 1.0 / t;
      const double N = 3.0 * (t - 2.0 * r) / (4.0 * r) - std::log(t / (2.0 * r)) + 0.25;
      EXPECT_NEAR(sol.D(t), D, 1e-12);
      EXPECT_NEAR(sol.s(t), N / D, 1e-10 * (1.0 + t));
    }
  }
}

TEST(OdeSolution, AnalyticDerivativesAgreeWithDifferences) {
  const OdeSolution sol = solve_ode(weight_demailly(1.0), 1.0);
  for (double t : {2.5, 4.0, 9.0}) {
    const auto d = sol.derivatives(t);
    const double h = 1e-4;
    EXPECT_NEAR(d.du, (sol.u(t + h) - sol.u(t - h)) / (2 * h), 1e-7);
    EXPECT_NEAR(d.ds, (sol.s(t + h) - sol.s(t - h)) / (2 * h), 1e-7);
  }
}

TEST(Residuals, AnalyticModeIsAtRoundingLevel) {
  for (const char* name : {"const", "demailly(1)", "dhp(0.5,1)"}) {
    const WeightSpec w = weight_by_name(name);
    const OdeSolution sol = solve_ode(w, 1.0);
    const auto r = residual_check(sol, interior_grid(w));
    EXPECT_LT(r.max_residual1, 1e-10) << name;
    EXPECT_LT(r.max_residual2, 1e-10) << name;
  }
  const WeightSpec c = weight_concise(1.0);
  const auto r = residual_check(solve_ode(c, std::nullopt), interior_grid(c));
  EXPECT_LT(std::max(r.max_residual1, r.max_residual2), 1e-10);
}

TEST(Residuals, FiniteDifferenceModeOnDemaillyGrid) {
  const OdeSolution sol = solve_ode(weight_demailly(1.0), 1.0);
  const auto r = residual_check(sol, linspace(2.5, 50.0, 64), DerivativeMode::FiniteDifference);
  EXPECT_LT(r.max_residual1, 1e-6);
  EXPECT_LT(r.max_residual2, 1e-6);
}

TEST(Residuals, PerturbedSolutionIsDetected) {
  const OdeSolution sol = solve_ode(weight_const(), 1.0);
  const auto r = residual_check(sol, linspace(0.5, 5.0, 32), DerivativeMode::Analytic, 1e-3);
  EXPECT_GT(r.max_residual2, 1e-4);
}

TEST(Positivity, AdmissibleWeightsHaveIncreasingS) {
  for (const char* name : {"const", "demailly(1)"}) {
    const WeightSpec w = weight_by_name(name);
    const auto p = positivity_check(solve_ode(w, 1.0), interior_grid(w));
    EXPECT_TRUE(p.holds) << name;
    EXPECT_TRUE(p.signs_agree) << name;
  }
}

TEST(Positivity, BumpSolutionFailsSomewhere) {
  const WeightSpec w = weight_bump();
  SolveOptions opts;
  opts.check_admissibility = false;
  const OdeSolution sol = solve_ode(w, 1.0, opts);
  const auto grid = interior_grid(w);
  const auto p = positivity_check(sol, grid);
  EXPECT_FALSE(p.holds);
  EXPECT_TRUE(p.signs_agree);
  const auto adm = check_cA_delta(w, 1.0, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_EQ(sol.derivatives(grid[i]).ds > 0.0, adm.margins[i] > 0.0) << "t=" << grid[i];
  }
}

TEST(SolveOde, RejectsInadmissibleWeight) {
  EXPECT_EQ(kind_of([] { solve_ode(weight_bump(), 1.0); }), ErrorKind::Admissibility);
}

TEST(Demailly, QuotedClosedFormExample) {
  EXPECT_NEAR(demailly_quoted_s(1.0, 4.0), (7.0 - std::log(4.0)) / 1.75, 1e-14);
  EXPECT_NEAR(demailly_quoted_s(1.0, 4.0), 3.2078, 1e-4);
}

TEST(Demailly, QuotedBoundHoldsButSolutionDiffers) {
  // The quoted expression stays above t/2; the solution of the ODE system
  // with a = c(-A)e^A / delta, b = a / delta is a different function and
  // dips below t/2 near the left end.
  const DemaillyReport r = demailly_s_lower_bound(1.0, linspace(2.01, 100.0, 400));
  EXPECT_TRUE(r.quoted_bound_holds);
  EXPECT_FALSE(r.matches_quoted);
  EXPECT_LT(r.min_ode_excess, 0.0);
  const DemaillyReport r2 = demailly_s_lower_bound(2.0, linspace(4.01, 100.0, 400));
  EXPECT_TRUE(r2.quoted_bound_holds);
}

TEST(Demailly, GridMustLieRightOfTheBoundary) {
  EXPECT_EQ(kind_of([] { demailly_s_lower_bound(1.0, {1.0, 3.0}); }), ErrorKind::Precondition);
}

TEST(Table, RowsHoldTUS) {
  const OdeSolution sol = solve_ode(weight_const(), 1.0);
  const auto rows = sol.table({1.0, 2.0});
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_DOUBLE_EQ(rows[1][0], 2.0);
  EXPECT_DOUBLE_EQ(rows[1][2], sol.s(2.0));
}
