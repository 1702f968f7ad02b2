#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rggham/lp_geometry.hpp"

namespace rggham {
namespace {

const LpExponent kInf = LpExponent::infinity();

TEST(LpExponent, RejectsBelowOneAndNaN) {
  EXPECT_THROW(LpExponent(0.5), std::invalid_argument);
  EXPECT_THROW(LpExponent(std::nan("")), std::invalid_argument);
  EXPECT_NO_THROW(LpExponent(1.0));
}

TEST(LpExponent, ParsesInfinityAndNumbers) {
  EXPECT_TRUE(LpExponent::parse("inf").is_infinite());
  EXPECT_TRUE(LpExponent::parse("INF").is_infinite());
  EXPECT_TRUE(LpExponent(std::numeric_limits<double>::infinity()).is_infinite());
  EXPECT_DOUBLE_EQ(LpExponent::parse("1.5").value(), 1.5);
  EXPECT_THROW(LpExponent::parse("two"), std::invalid_argument);
  EXPECT_THROW(LpExponent::parse("0.9"), std::invalid_argument);
  EXPECT_EQ(LpExponent::parse("inf").to_string(), "inf");
}

TEST(LpDistance, ThreeFourFive) {
  const Point2D o{0, 0}, q{0.3, 0.4};
  EXPECT_NEAR(lp_distance(LpExponent(2), o, q), 0.5, 1e-15);
  EXPECT_NEAR(lp_distance(LpExponent(1), o, q), 0.7, 1e-15);
  EXPECT_NEAR(lp_distance(kInf, o, q), 0.4, 1e-15);
}

TEST(LpDistance, MetricAxiomsOnRandomTriples) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const LpExponent& p : {LpExponent(1), LpExponent(1.3), LpExponent(2), LpExponent(4.5), kInf}) {
    for (int i = 0; i < 2000; ++i) {
      const Point2D a{u(gen), u(gen)}, b{u(gen), u(gen)}, c{u(gen), u(gen)};
      const double ab = lp_distance(p, a, b);
      EXPECT_GE(ab, 0.0);
      EXPECT_EQ(ab, lp_distance(p, b, a));
      EXPECT_LE(ab, lp_distance(p, a, c) + lp_distance(p, c, b) + 1e-14);
      EXPECT_EQ(lp_distance(p, a, a), 0.0);
    }
  }
}

TEST(LpDistance, LargeFiniteExponentApproachesMax) {
  const Point2D o{0, 0}, q{0.3, 0.4};
  EXPECT_NEAR(lp_distance(LpExponent(200), o, q), 0.4, 1e-3);
  EXPECT_LT(lp_distance(LpExponent(1e6), o, q) - 0.4, 1e-6);
}

TEST(AlphaP, KnownValues) {
  EXPECT_NEAR(alpha_p(LpExponent(2)), std::numbers::pi, 1e-12);
  EXPECT_NEAR(alpha_p(kInf), 4.0, 1e-12);
  EXPECT_NEAR(alpha_p(LpExponent(1)), 2.0, 1e-12);
  // Independent high-precision evaluations.
  EXPECT_NEAR(alpha_p(LpExponent(1.5)), 2.73785362391890290804, 1e-12);
  EXPECT_NEAR(alpha_p(LpExponent(3)), 3.53327750057089991463, 1e-12);
  EXPECT_NEAR(alpha_p(LpExponent(10)), 3.94292789781003233263, 1e-12);
}

TEST(AlphaP, MatchesQuadrature) {
  for (double p : {1.0, 1.25, 1.5, 2.0, 2.5, 3.0, 5.0, 10.0}) {
    EXPECT_NEAR(alpha_p(LpExponent(p)), oracle::alpha_by_quadrature(p), 1e-6) << "p = " << p;
  }
}

TEST(AlphaP, IncreasesWithP) {
  double prev = alpha_p(LpExponent(1.0));
  for (double p = 1.05; p < 40.0; p *= 1.05) {
    const double a = alpha_p(LpExponent(p));
    EXPECT_GT(a, prev) << "p = " << p;
    prev = a;
  }
  EXPECT_LT(prev, 4.0);
}

TEST(MaxBoxDistance, Examples) {
  const Box unit{0, 1, 0, 1};
  EXPECT_DOUBLE_EQ(max_box_distance(kInf, unit, Box{2, 3, 0, 1}), 3.0);
  EXPECT_DOUBLE_EQ(max_box_distance(LpExponent(1), unit, unit), 2.0);
  EXPECT_NEAR(max_box_distance(LpExponent(2), Box{0, .1, 0, .1}, Box{.2, .3, 0, .1}), std::sqrt(0.10), 1e-15);
}

TEST(MaxBoxDistance, EqualsCornerBruteForceExactly) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto box = [&] {
    double x0 = u(gen), x1 = u(gen), y0 = u(gen), y1 = u(gen);
    return Box{std::min(x0, x1), std::max(x0, x1), std::min(y0, y1), std::max(y0, y1)};
  };
  for (const LpExponent& p : {LpExponent(1), LpExponent(1.5), LpExponent(2), LpExponent(3), kInf}) {
    for (int i = 0; i < 5000; ++i) {
      const Box a = box(), b = box();
      EXPECT_EQ(max_box_distance(p, a, b), oracle::max_corner_distance(p, a, b));
    }
  }
}

TEST(MaxBoxDistance, SquareDiameter) {
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    const Box sq{0.2, 0.45, 0.1, 0.35};
    EXPECT_NEAR(max_box_distance(LpExponent(p), sq, sq), std::pow(2.0, 1.0 / p) * 0.25, 1e-15);
  }
  EXPECT_DOUBLE_EQ(max_box_distance(kInf, Box{0, .25, 0, .25}, Box{0, .25, 0, .25}), 0.25);
}

}  // namespace
}  // namespace rggham
