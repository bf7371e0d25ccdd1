#include <gtest/gtest.h>

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>
#include <vector>

#include "l2ext/error.hpp"
#include "l2ext/quadrature.hpp"

using namespace l2ext;

namespace {

constexpr double kPi = std::numbers::pi;

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no l2ext::Error raised";
  return ErrorKind::Config;
}

}  // namespace

TEST(Quadrature, GaussianOverTheLine) {
  const auto r = quad::integrate([](double x) { return std::exp(-x * x); }, -INFINITY, INFINITY);
  EXPECT_NEAR(r.value, std::sqrt(kPi), 1e-14);
  EXPECT_TRUE(r.converged);
}

TEST(Quadrature, AlgebraicTailMatchesClosedForm) {
  // int_1^inf t^{-3/2} dt = 2
  const auto r = quad::integrate([](double t) { return std::pow(t, -1.5); }, 1.0, INFINITY);
  EXPECT_NEAR(r.value, 2.0, 1e-12);
}

TEST(Quadrature, LowerGammaAgainstBoost) {
  for (double a : {0.5, 1.5, 3.0}) {
    const auto r = quad::integrate([a](double t) { return std::pow(t, a - 1.0) * std::exp(-t); }, 0.0, 2.0);
    const double oracle = boost::math::tgamma_lower(a, 2.0);
    EXPECT_NEAR(r.value, oracle, 1e-12 * oracle) << "a=" << a;
  }
}

TEST(Quadrature, HalfLineArctan) {
  const auto r = quad::integrate([](double t) { return 1.0 / (1.0 + t * t); }, -INFINITY, 0.0);
  EXPECT_NEAR(r.value, 0.5 * kPi, 1e-13);
}

TEST(Quadrature, DivergentTailIsReported) {
  EXPECT_EQ(kind_of([] { quad::integrate([](double t) { return 1.0 / t; }, 1.0, INFINITY); }),
            ErrorKind::NonIntegrableWeight);
  EXPECT_FALSE(quad::tail_decays([](double t) { return 1.0 / t; }, 1.0, 1));
  EXPECT_TRUE(quad::tail_decays([](double t) { return std::exp(-t); }, 0.0, 1));
}

TEST(Quadrature, NonFiniteIntegrandIsADomainError) {
  EXPECT_EQ(kind_of([] { quad::integrate([](double) { return NAN; }, 0.0, 1.0); }), ErrorKind::Domain);
}

TEST(Quadrature, ReversedLimitsFlipSign) {
  const auto f = [](double x) { return x * x; };
  EXPECT_NEAR(quad::integrate(f, 1.0, 0.0).value, -1.0 / 3.0, 1e-15);
}

TEST(GaussLegendre, ExactForPolynomialsUpToDegree2nMinus1) {
  for (int n : {1, 4, 10, 20}) {
    const auto rule = quad::gauss_legendre(n);
    double wsum = 0.0;
    for (const auto& nd : rule) wsum += nd.w;
    EXPECT_NEAR(wsum, 2.0, 1e-14);
    const int deg = 2 * n - 1;
    double s = 0.0;
    for (const auto& nd : rule) s += nd.w * std::pow(nd.x, deg - 1);
    EXPECT_NEAR(s, 2.0 / deg, 1e-14) << "n=" << n;
  }
}

TEST(GaussLegendre, MappedRule) {
  double s = 0.0;
  for (const auto& nd : quad::gauss_legendre(12, 0.0, kPi)) s += nd.w * std::sin(nd.x);
  EXPECT_NEAR(s, 2.0, 1e-14);
}

TEST(Richardson, RemovesPowerSeriesError) {
  // T(h) = 1 + 3h + 5h^2 - h^3
  std::vector<double> samples;
  for (int j = 0; j < 5; ++j) {
    const double h = std::ldexp(0.5, -j);
    samples.push_back(1.0 + 3.0 * h + 5.0 * h * h - h * h * h);
  }
  const auto e = quad::richardson(samples);
  EXPECT_NEAR(e.value, 1.0, 1e-13);
  EXPECT_LT(e.spread(), 1e-12);
}
