#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "minwidth/cheeger.hpp"
#include "test_support.hpp"

using namespace minwidth;
namespace ts = minwidth::test_support;

namespace {

// (1 - 2t)^2 = pi t^2  =>  t = 1 / (2 + sqrt(pi)).
TEST(CheegerBisection, UnitSquareClosedForm) {
  const CheegerResult c = cheeger_bisection(ts::unit_square());
  EXPECT_NEAR(c.h, 2.0 + std::sqrt(kPi), 1e-8);
  EXPECT_NEAR(c.h * c.t_star, 1.0, 1e-15);
  EXPECT_EQ(c.method, CheegerMethod::bisection);
}

TEST(CheegerBisection, FineRegularPolygonApproachesDisk) {
  const CheegerResult c = cheeger_bisection(build_regular_polygon(720, 0.5));
  EXPECT_NEAR(c.h, 4.0, 1e-3);
}

// Homothetic triangle: (1 - 3t)^2 sqrt(3)/3 = pi t^2 gives
// t = 1 / (3 + sqrt(pi sqrt(3))).
TEST(CheegerBisection, UnitTriangle) {
  const double expected = 3.0 + std::sqrt(kPi * std::sqrt(3.0));
  EXPECT_NEAR(expected, 5.33268045, 1e-8);
  EXPECT_NEAR(cheeger_bisection(build_unit_triangle()).h, expected, 1e-8);
}

TEST(CheegerBisection, RejectsBadTolerance) {
  EXPECT_THROW(cheeger_bisection(ts::unit_square(), 0.0), DomainError);
  EXPECT_THROW(cheeger_bisection(ts::unit_square(), 1e-2), DomainError);
}

TEST(CheegerThreeCap, Endpoints) {
  EXPECT_NEAR(cheeger_three_cap(1.0 / 3.0).h, 3.0 + std::sqrt(kPi * std::sqrt(3.0)), 1e-12);
  EXPECT_NEAR(cheeger_three_cap(0.5).h, 4.0, 1e-12);
  EXPECT_EQ(cheeger_three_cap(0.4).method, CheegerMethod::closed_form);
  EXPECT_THROW(cheeger_three_cap(0.6), DomainError);
}

TEST(CheegerThreeCap, StrictlyDecreasing) {
  double prev = cheeger_three_cap(1.0 / 3.0).h;
  for (int i = 1; i <= 128; ++i) {
    const double h = cheeger_three_cap(1.0 / 3.0 + (1.0 / 6.0) * i / 128.0).h;
    EXPECT_LT(h, prev);
    prev = h;
  }
}

TEST(CheegerThreeCap, AgreesWithBisectionOnPolygons) {
  for (int i = 0; i <= 16; ++i) {
    const double r = 1.0 / 3.0 + (1.0 / 6.0) * i / 16.0;
    const double closed = cheeger_three_cap(r).h;
    const double numeric = cheeger_bisection(build_three_cap(ThreeCapParams::equilateral(r, 512))).h;
    EXPECT_NEAR(numeric, closed, 2e-3) << r;
  }
}

// The closed form only depends on r: caps may sit anywhere.
TEST(CheegerThreeCap, IndependentOfCapPositions) {
  const double closed = cheeger_three_cap(0.42).h;
  const double numeric = cheeger_bisection(build_three_cap({0.42, 0.1, 2.0, 4.3, 1024})).h;
  EXPECT_NEAR(numeric, closed, 1e-4);
}

TEST(CheegerBisection, MonotoneUnderInclusion) {
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 25; ++trial) {
    const ConvexPolygon outer = ts::random_convex_polygon(rng);
    // Inner parallel bodies and hull-of-subsets are nested inside outer.
    const ConvexPolygon inner = inner_parallel(outer, 0.3 * incircle(outer).radius * u(rng));
    EXPECT_GE(cheeger_bisection(inner).h, cheeger_bisection(outer).h - 1e-9);
  }
  const ConvexPolygon big = ts::unit_square();
  const ConvexPolygon small({{0.1, 0.1}, {0.9, 0.2}, {0.8, 0.9}, {0.2, 0.7}});
  EXPECT_GT(cheeger_bisection(small).h, cheeger_bisection(big).h);
}

}  // namespace
