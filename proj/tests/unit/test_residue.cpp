#include <gtest/gtest.h>

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>

#include "l2ext/error.hpp"
#include "l2ext/residue.hpp"

using namespace l2ext;

namespace {

PolarConfig point_config(double shift) {
  PolarConfig c;
  c.n = 1;
  c.l = 0;
  c.psi = [shift](const PolarConfig::Point&) { return shift; };
  c.f = [](const PolarConfig::Point& p) { return std::exp(-std::norm(p[0])); };
  return c;
}

}  // namespace

TEST(SphereVolume, AgainstGammaFormula) {
  for (int m = 0; m <= 7; ++m) {
    const double oracle = 2.0 * std::pow(std::numbers::pi, (m + 1) / 2.0) / boost::math::tgamma((m + 1) / 2.0);
    EXPECT_NEAR(sphere_volume(m), oracle, 1e-13 * oracle) << m;
  }
  EXPECT_NEAR(sphere_volume(3), 2.0 * std::numbers::pi * std::numbers::pi, 1e-13);
}

TEST(Slab, PointMassInOneDimension) {
  const SlabValue v = slab_integral(point_config(0.0), 12.0);
  EXPECT_NEAR(v.value, 1.0, 2e-3);
  EXPECT_GT(v.nodes, 0);
}

TEST(Slab, ConstantShiftScalesByExponential) {
  EXPECT_NEAR(slab_integral(point_config(0.7), 12.0).value, std::exp(-0.7), 2e-3);
}

TEST(Slab, ZeroDensity) {
  PolarConfig c = point_config(0.0);
  c.f = [](const PolarConfig::Point&) { return 0.0; };
  EXPECT_EQ(slab_integral(c, 8.0).value, 0.0);
}

TEST(Slab, Linearity) {
  PolarConfig c = point_config(0.0);
  const double base = slab_integral(c, 9.0).value;
  c.f = [](const PolarConfig::Point& p) { return 2.5 * std::exp(-std::norm(p[0])); };
  EXPECT_NEAR(slab_integral(c, 9.0).value, 2.5 * base, 1e-13);
}

TEST(Slab, EscapingTheChartIsARangeError) {
  try {
    slab_integral(point_config(0.0), -2.0);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Range);
  }
}

TEST(ResidueLimit, BuiltInCasesMatchTheClosedForm) {
  for (const ResidueCase& c : residue_cases()) {
    const ResidueLimit r = residue_limit(c.config, c.t_list);
    EXPECT_LT(r.relative_error, 1e-3) << c.name;
    EXPECT_FALSE(r.monotone_warning) << c.name;
  }
}

TEST(ResidueLimit, DiscAreaInC2) {
  const ResidueCase c = residue_cases()[1];
  EXPECT_NEAR(residue_limit(c.config, c.t_list).limit, std::numbers::pi * 0.25, 5e-3);
}

TEST(ResidueLimit, NeedsEnoughSamples) {
  EXPECT_THROW(residue_limit(point_config(0.0), {6.0, 7.0, 8.0}), Error);
  EXPECT_THROW(residue_limit(point_config(0.0), {6.0, 6.5, 7.0, 7.5}), Error);
}
