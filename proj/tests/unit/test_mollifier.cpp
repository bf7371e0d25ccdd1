#include <gtest/gtest.h>

#include <cmath>

#include "l2ext/error.hpp"
#include "l2ext/mollifier.hpp"

using namespace l2ext;

TEST(Mollifier, DefiningConditionsHold) {
  for (auto [t0, eps] : {std::pair{0.0, 0.2}, {3.0, 0.1}, {3.0, 0.05}, {1.0, 0.15}}) {
    const MollifierReport r = check_mollifier(make_mollifier(t0, eps), 1000);
    EXPECT_TRUE(r.linear_above) << t0 << " " << eps;
    EXPECT_TRUE(r.constant_below) << t0 << " " << eps;
    EXPECT_TRUE(r.slope_bounds) << t0 << " " << eps;
    EXPECT_TRUE(r.curvature_bounds) << t0 << " " << eps;
  }
}

TEST(Mollifier, ConvergesToBInC1) {
  double prev = INFINITY;
  for (double eps : {0.2, 0.1, 0.05, 0.025}) {
    const double d = check_mollifier(make_mollifier(3.0, eps)).c1_distance();
    EXPECT_LT(d, prev) << eps;
    prev = d;
  }
}

TEST(Mollifier, DerivativesAreConsistent) {
  const Mollifier m = make_mollifier(0.0, 0.2);
  const double h = 1e-5;
  for (double t : {-0.9, -0.6, -0.5, -0.3}) {
    EXPECT_NEAR(m.dv(t), (m.v(t + h) - m.v(t - h)) / (2 * h), 1e-8) << t;
    EXPECT_NEAR(m.d2v(t), (m.dv(t + h) - m.dv(t - h)) / (2 * h), 1e-6) << t;
  }
}

TEST(Mollifier, LinearPieceAndNormalization) {
  const Mollifier m = make_mollifier(3.0, 0.1);
  EXPECT_NEAR(m.v(0.0), 0.0, 1e-14);
  EXPECT_NEAR(m.dv(1.0), 1.0, 1e-14);
  EXPECT_NEAR(m.v(1.0) - m.v(-1.0), 2.0, 1e-12);
  EXPECT_NEAR(m.dv(-5.0), 0.0, 1e-14);
}

TEST(Mollifier, RejectsBadEpsilon) {
  EXPECT_THROW(make_mollifier(0.0, 0.0), Error);
  EXPECT_THROW(make_mollifier(0.0, 0.3), Error);
}
