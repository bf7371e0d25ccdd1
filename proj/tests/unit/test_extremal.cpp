#include <gtest/gtest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <complex>
#include <numbers>

#include "l2ext/error.hpp"
#include "l2ext/extremal.hpp"

using namespace l2ext;

namespace {

constexpr double kPi = std::numbers::pi;

// int_ball density dlambda with dlambda = (2 pi^m / (m-1)!) r^{2m-1} dr.
// Inside r < a the integrand is evaluated in log space in u = log(a/r) on
// (0, inf) by exp-sinh; the annulus a < r < R uses Gauss-Kronrod in r.
double radial_oracle(const ModelBall& ball, const WeightSpec& w) {
  using boost::math::quadrature::exp_sinh;
  using boost::math::quadrature::gauss_kronrod;
  const int m = ball.m;
  const double sphere = 2.0 * std::pow(kPi, m) / std::tgamma(m);
  // c(t) r^{2m} with t = -Psi = 2 m u - A + eps, grouped so that the 2 m u
  // terms cancel exactly.
  auto inner = [&](double u) {
    const double t = 2.0 * m * u - ball.A + ball.eps;
    return std::exp(w.log_density(t) - ball.A + ball.eps + 2.0 * m * std::log(ball.a) - ball.phi(ball.a));
  };
  auto outer = [&](double r) { return ball.density(w, r) * std::pow(r, 2 * m - 1); };
  exp_sinh<double> es;
  const double in = es.integrate(inner, 1e-13);
  const double out = gauss_kronrod<double, 61>::integrate(outer, ball.a, ball.radius(), 15, 1e-14);
  return sphere * (in + out);
}

}  // namespace

TEST(BallVolume, ClosedForm) {
  EXPECT_NEAR(ball_volume(1), kPi, 1e-15);
  EXPECT_NEAR(ball_volume(2), kPi * kPi / 2.0, 1e-14);
  EXPECT_NEAR(ball_volume(3), kPi * kPi * kPi / 6.0, 1e-13);
}

TEST(RadialIntegral, ConstantWeightHandFormula) {
  // c = 1, m = 1, A = 0: pi (a^{-2 delta} + (a^{-2 delta} - 1) / delta)
  for (double a : {0.1, 0.01}) {
    for (double delta : {0.5, 1.0, 2.0}) {
      const ModelBall ball{1, 0.0, a, delta, 1e-3, false};
      const double ad = std::pow(a, -2.0 * delta);
      const double expected = kPi * (ad + (ad - 1.0) / delta);
      EXPECT_NEAR(radial_integral(ball, weight_const()), expected, 1e-10 * expected) << a << " " << delta;
    }
  }
}

TEST(RadialIntegral, AgreesWithBoostQuadrature) {
  for (int m : {1, 2, 3}) {
    for (const WeightSpec& w : {weight_const(), weight_dhp(0.5, 0.5), weight_demailly(1.0)}) {
      const double A = w.A;
      const ModelBall ball{m, A, 0.2, 1.0, 1e-2, false};
      const double oracle = radial_oracle(ball, w);
      EXPECT_NEAR(radial_integral(ball, w), oracle, 1e-9 * oracle) << m << " " << w.name;
    }
  }
}

TEST(RadialIntegral, PlainBall) {
  // Psi = m log|z|^2, phi = 0: (pi^m / m!) int_{-A}^inf c e^{-t} dt
  for (int m : {1, 2}) {
    const ModelBall ball = ModelBall::plain_ball(m, 0.0);
    EXPECT_NEAR(radial_integral(ball, weight_const()), ball_volume(m), 1e-12);
  }
}

TEST(ModelBall, Validation) {
  EXPECT_THROW((ModelBall{4, 0.0, 0.1, 1.0, 0.0, false}.validate()), Error);
  EXPECT_THROW((ModelBall{1, 0.0, 1.5, 1.0, 0.0, false}.validate()), Error);
  EXPECT_THROW((ModelBall{1, 0.0, 0.1, -1.0, 0.0, false}.validate()), Error);
  EXPECT_NO_THROW((ModelBall{2, 0.0, 0.1, 1.0, 1e-3, false}.validate()));
}

TEST(LeastNorm, MinimizerIsTheConstant) {
  for (int m : {1, 2}) {
    const ModelBall ball{m, 0.0, 1e-3, 1.0, 1e-3, false};
    const std::complex<double> f0(1.5, -0.5);
    const LeastNormResult r = least_norm_extension(ball, weight_const(), f0);
    const double expected = std::norm(f0) * radial_integral(ball, weight_const());
    EXPECT_NEAR(r.value, expected, 1e-9 * expected);
    EXPECT_NEAR(r.diagonal_value, expected, 1e-9 * expected);
    EXPECT_LE(r.max_higher, 1e-8 * std::abs(f0));
    EXPECT_GT(r.min_eigen_scaled, 0.0);
    // Total degree <= 8 in m variables.
    EXPECT_EQ(r.multi_indices.size(), m == 1 ? 9u : 45u);
  }
}

TEST(LeastNorm, StartPointDoesNotMatter) {
  const ModelBall ball{2, 0.0, 1e-2, 1.0, 1e-3, false};
  LeastNormOptions opts;
  const auto a = least_norm_extension(ball, weight_const(), 1.0, opts);
  opts.start_perturbation = 1.0;
  const auto b = least_norm_extension(ball, weight_const(), 1.0, opts);
  for (std::size_t i = 0; i < a.coefficients.size(); ++i) EXPECT_NEAR(std::abs(a.coefficients[i] - b.coefficients[i]), 0.0, 1e-10);
}

TEST(LeastNorm, DegreeBelowFourRejected) {
  LeastNormOptions opts;
  opts.K = 3;
  EXPECT_THROW(least_norm_extension(ModelBall{1, 0.0, 0.1, 1.0, 0.0, false}, weight_const(), 1.0, opts), Error);
}

TEST(Optimality, RatioApproachesOneMonotonically) {
  double prev_gap = INFINITY;
  for (double a : {1e-2, 1e-3, 1e-4}) {
    const double r = optimality_ratio(1, weight_const(), 1.0, 0.0, a, 1e-3);
    EXPECT_LE(r, 1.0 + 1e-12);
    EXPECT_LT(1.0 - r, prev_gap);
    prev_gap = 1.0 - r;
  }
  EXPECT_LT(prev_gap, 0.01);
}

TEST(Optimality, BoundarySublimit) {
  EXPECT_NEAR(boundary_sublimit(1e-6, 1.0, 0.0), 1.0, 1e-9);
  EXPECT_NEAR(boundary_sublimit(1e-6, 0.5, 0.0), 2.0, 1e-5);
}

TEST(Crossing, MomentsDominateStrictly) {
  const CrossingPair p = build_crossing([](double) { return 1.0; }, 3.0, 2.0, 1.0);
  const MomentReport m = moment_dominance(p, 50);
  EXPECT_TRUE(m.strict);
  EXPECT_LT(std::abs(m.k0_difference), 1e-10);
  // Brute-force check of the first moment by composite Simpson on [r3, r1].
  auto moment = [](const RealFn& d, int k) {
    const int n = 20000;
    const double a = 1.0, b = 3.0, h = (b - a) / n;
    double s = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double t = a + h * i;
      const double wgt = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      s += wgt * d(t) * std::exp(-(k + 1.0) * t);
    }
    return s * h / 3.0;
  };
  EXPECT_GT(moment(p.d2, 1) - moment(p.d1, 1), 0.0);
  EXPECT_NEAR(moment(p.d2, 1) - moment(p.d1, 1), m.differences[1], 1e-9);
}

TEST(Crossing, SwappedPairFailsAtFirstMoment) {
  CrossingPair p = build_crossing([](double) { return 1.0; }, 3.0, 2.0, 1.0);
  std::swap(p.d1, p.d2);
  const MomentReport m = moment_dominance(p, 10);
  EXPECT_FALSE(m.strict);
  EXPECT_EQ(m.first_failure, 1);
}

TEST(Crossing, DegenerateAndInvalid) {
  EXPECT_THROW(build_crossing([](double) { return 1.0; }, 3.0, 2.0, 1.0, 0.0), Error);
  EXPECT_THROW(build_crossing([](double) { return 1.0; }, 1.0, 2.0, 3.0), Error);
}

TEST(Crossing, DiscNormOfNonConstantPolynomialIncreases) {
  const CrossingPair p = build_crossing([](double) { return 1.0; }, 3.0, 2.0, 1.0);
  const std::vector<std::complex<double>> f{1.0, 1.0};
  // d = 1: int_disc |1 + z|^2 = pi + pi / 2
  EXPECT_NEAR(disc_polynomial_norm(p.d1, f), 1.5 * kPi, 1e-10);
  EXPECT_GT(disc_polynomial_norm(p.d2, f), disc_polynomial_norm(p.d1, f));
  // Constants see only the k = 0 moment, which is preserved.
  const std::vector<std::complex<double>> one{1.0};
  EXPECT_NEAR(disc_polynomial_norm(p.d2, one), disc_polynomial_norm(p.d1, one), 1e-10);
}

TEST(DiscTail, ConstantAndRatios) {
  for (double r : {0.3, 0.5, 0.8}) {
    const DiscTailReport d = disc_tail_constant(r, 40);
    EXPECT_EQ(d.constant, 1.0 / (1.0 - r * r));
    ASSERT_EQ(d.ratios.size(), 41u);
    for (std::size_t j = 1; j < d.ratios.size(); ++j) {
      EXPECT_LE(d.ratios[j], d.ratios[j - 1]);
      EXPECT_LE(d.ratios[j], d.bound);
    }
  }
}
