#include <gtest/gtest.h>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <cmath>
#include <numbers>

#include "l2ext/error.hpp"
#include "l2ext/planar.hpp"

using namespace l2ext;

namespace {

constexpr double kPi = std::numbers::pi;

// Harmonic part h = G - log|z - z0| of the annulus Green function by a
// five-point finite-difference solve in (log r, theta), where the Laplacian
// is the flat one. Boundary data h = -log|z - z0| on both circles.
class LaplaceOracle {
 public:
  LaplaceOracle(double q, cplx z0, int ns, int nt) : q_(q), z0_(z0), ns_(ns), nt_(nt) {
    s0_ = std::log(q);
    hs_ = -s0_ / (ns + 1);
    ht_ = 2.0 * kPi / nt;
    const int n = ns * nt;
    std::vector<Eigen::Triplet<double>> trip;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    const double cs = 1.0 / (hs_ * hs_);
    const double ct = 1.0 / (ht_ * ht_);
    auto idx = [nt](int i, int j) { return i * nt + ((j % nt) + nt) % nt; };
    auto boundary = [&](int i, int j) { return -std::log(std::abs(point(i, j) - z0_)); };
    for (int i = 0; i < ns; ++i) {
      for (int j = 0; j < nt; ++j) {
        const int k = idx(i, j);
        trip.emplace_back(k, k, -2.0 * cs - 2.0 * ct);
        trip.emplace_back(k, idx(i, j + 1), ct);
        trip.emplace_back(k, idx(i, j - 1), ct);
        if (i > 0) trip.emplace_back(k, idx(i - 1, j), cs); else rhs[k] -= cs * boundary(-1, j);
        if (i < ns - 1) trip.emplace_back(k, idx(i + 1, j), cs); else rhs[k] -= cs * boundary(ns, j);
      }
    }
    Eigen::SparseMatrix<double> mat(n, n);
    mat.setFromTriplets(trip.begin(), trip.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(mat);
    sol_ = lu.solve(rhs);
  }

  // Green function at grid node (i, j).
  double green_at(int i, int j) const {
    return sol_[i * nt_ + j] + std::log(std::abs(point(i, j) - z0_));
  }
  cplx point(int i, int j) const { return std::polar(std::exp(s0_ + hs_ * (i + 1)), ht_ * j); }

 private:
  double q_;
  cplx z0_;
  int ns_, nt_;
  double s0_ = 0.0, hs_ = 0.0, ht_ = 0.0;
  Eigen::VectorXd sol_;
};

// (2/pi) d^2 G / dz dt by central differences in the real coordinates of z and t.
cplx l_kernel_fd(const PlanarDomain& dom, cplx z, cplx t, double h) {
  auto dz = [&](cplx tt) {
    const double gx = (green(dom, z + h, tt) - green(dom, z - h, tt)) / (2 * h);
    const double gy = (green(dom, z + cplx(0, h), tt) - green(dom, z - cplx(0, h), tt)) / (2 * h);
    return 0.5 * cplx(gx, -gy);
  };
  const cplx tx = (dz(t + h) - dz(t - h)) / (2 * h);
  const cplx ty = (dz(t + cplx(0, h)) - dz(t - cplx(0, h))) / (2 * h);
  return (2.0 / kPi) * 0.5 * (tx - cplx(0, 1) * ty);
}

}  // namespace

TEST(Green, DiscClosedFormAndBoundary) {
  const auto d = PlanarDomain::disc();
  EXPECT_NEAR(green(d, 0.5, 0.0), std::log(0.5), 1e-15);
  EXPECT_NEAR(green(d, std::polar(1.0 - 1e-12, 0.3), 0.4), 0.0, 1e-10);
  EXPECT_NEAR(green(d, 0.2, cplx(0.1, 0.3)), green(d, cplx(0.1, 0.3), 0.2), 1e-14);
}

TEST(Green, AnnulusMatchesFiniteDifferenceLaplace) {
  const double q = 0.5;
  const cplx z0 = 0.7;
  const auto dom = PlanarDomain::annulus(q);
  // Two resolutions; the second-order error shrinks by about 4.
  const LaplaceOracle coarse(q, z0, 39, 128);
  const LaplaceOracle fine(q, z0, 79, 256);
  double err_c = 0.0, err_f = 0.0;
  for (int j : {16, 40, 64, 100}) {
    for (int i : {9, 19, 29}) {
      const cplx zc = coarse.point(i, j);
      const cplx zf = fine.point(2 * i + 1, 2 * j);
      ASSERT_NEAR(std::abs(zc - zf), 0.0, 1e-12);
      err_c = std::max(err_c, std::abs(coarse.green_at(i, j) - green(dom, zc, z0)));
      err_f = std::max(err_f, std::abs(fine.green_at(2 * i + 1, 2 * j) - green(dom, zf, z0)));
    }
  }
  EXPECT_LT(err_f, 2e-4);
  EXPECT_LT(err_f, 0.35 * err_c);
}

TEST(Green, AnnulusBoundaryAndSymmetry) {
  const auto dom = PlanarDomain::annulus(0.5);
  for (double th : {0.0, 1.0, 2.5}) {
    EXPECT_NEAR(green(dom, std::polar(1.0 - 1e-12, th), 0.7), 0.0, 1e-9);
    EXPECT_NEAR(green(dom, std::polar(0.5 + 1e-12, th), 0.7), 0.0, 1e-9);
  }
  EXPECT_NEAR(green(dom, cplx(0.6, 0.2), 0.75), green(dom, 0.75, cplx(0.6, 0.2)), 1e-13);
  EXPECT_LT(green(dom, cplx(-0.6, 0.1), 0.7), 0.0);
}

TEST(Green, PoleIsASingularity) {
  EXPECT_THROW(green(PlanarDomain::disc(), 0.3, 0.3), Error);
  EXPECT_THROW(green(PlanarDomain::annulus(0.5), 0.3, 0.7), Error);  // outside
}

TEST(Capacity, RichardsonMatchesRobinSeries) {
  const auto disc = PlanarDomain::disc();
  EXPECT_NEAR(log_capacity(disc, 0.3).value, 1.0 / (1.0 - 0.09), 1e-9);
  const auto ann = PlanarDomain::annulus(0.5);
  for (double z : {0.6, 0.7, 0.85}) {
    EXPECT_NEAR(log_capacity(ann, z).log_value, robin_constant(ann, z), 1e-8) << z;
  }
}

TEST(Bergman, DiscClosedFormAndSeries) {
  const auto d = PlanarDomain::disc();
  const double b = bergman(d, 0.6).value;
  EXPECT_NEAR(b, 1.0 / (kPi * 0.64 * 0.64), 1e-14);
  EXPECT_NEAR(bergman_disc_series(0.6, 400), b, 1e-12);
}

TEST(Suita, DiscEquality) {
  for (double z : {0.0, 0.3, 0.6, 0.8}) {
    const SuitaRecord s = suita_check(PlanarDomain::disc(), z);
    EXPECT_LE(std::abs(s.gap), 1e-9) << z;
    EXPECT_TRUE(s.holds);
  }
  const SuitaRecord c = suita_check(PlanarDomain::disc(), cplx(0.0, 0.6));
  EXPECT_LE(std::abs(c.gap), 1e-9);
}

TEST(Suita, AnnulusAgainstHighPrecisionReference) {
  // Reference values from an independent 40-digit evaluation of the
  // Laurent-series Bergman kernel and Robin constant.
  struct Ref {
    double q, z0, pi_b, gap;
  };
  for (const Ref& r : {Ref{0.3, 0.4, 22.8643321878496, 6.004120434e-6}, Ref{0.5, 0.6, 26.3734481202897, 5.294631288e-11},
                       Ref{0.5, 0.7, 10.5027586673635, 7.176490115e-11}, Ref{0.7, 0.75, 105.765156210731, 1.659852507e-22}}) {
    const SuitaRecord s = suita_check(PlanarDomain::annulus(r.q), r.z0);
    EXPECT_NEAR(kPi * s.bergman, r.pi_b, 1e-12 * r.pi_b);
    EXPECT_NEAR(s.gap, r.gap, 1e-8 * r.gap);
    EXPECT_GT(s.gap, s.truncation_error_bound);
    EXPECT_TRUE(s.holds);
  }
}

TEST(AnalyticCapacity, DiscEqualsCBeta) {
  for (double z : {0.0, 0.4, 0.9}) {
    EXPECT_NEAR(analytic_capacity_disc(z), 1.0 / (1.0 - z * z), 1e-12);
  }
  try {
    analytic_capacity(PlanarDomain::annulus(0.5), 0.7);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnsupportedDomain);
  }
}

TEST(LKernel, MatchesMixedDerivativeOfGreen) {
  const auto ann = PlanarDomain::annulus(0.5);
  for (auto [z, t] : {std::pair{cplx(0.6, 0.3), cplx(0.75, 0.0)}, {cplx(-0.7, 0.1), cplx(0.0, 0.8)}}) {
    const cplx exact = l_kernel(ann, z, t);
    const cplx fd = l_kernel_fd(ann, z, t, 1e-4);
    EXPECT_NEAR(std::abs(exact - fd), 0.0, 1e-5 * std::abs(exact)) << z << " " << t;
  }
  const auto disc = PlanarDomain::disc();
  const cplx z(0.2, -0.4), t(0.5, 0.1);
  EXPECT_NEAR(std::abs(l_kernel(disc, z, t) - l_kernel_fd(disc, z, t, 1e-4)), 0.0, 1e-5 * std::abs(l_kernel(disc, z, t)));
  EXPECT_THROW(l_kernel(ann, 0.7, 0.7), Error);
}

TEST(LKernel, ZeroCounts) {
  const ZeroCount a = l_kernel_zero_count(PlanarDomain::annulus(0.5), 0.7);
  EXPECT_EQ(a.zeros, 1);
  EXPECT_EQ(l_kernel_zero_count(PlanarDomain::disc(), 0.3).zeros, 0);
}

TEST(PlanarDomain, Construction) {
  EXPECT_THROW(PlanarDomain::annulus(1.5), Error);
  EXPECT_THROW(PlanarDomain::annulus(0.5, 0), Error);
  EXPECT_TRUE(PlanarDomain::annulus(0.5).contains(0.7));
  EXPECT_FALSE(PlanarDomain::annulus(0.5).contains(0.3));
}
