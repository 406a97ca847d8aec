#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "minwidth/geometry.hpp"
#include "test_support.hpp"

using namespace minwidth;
using minwidth::test_support::unit_square;
namespace ts = minwidth::test_support;

namespace {

const double kSqrt3 = std::sqrt(3.0);

// ---------------------------------------------------------------- building

TEST(BuildPolygon, TriangleIsKeptCounterclockwise) {
  const std::vector<Vec2> pts{{0, 0}, {0, 1}, {1, 0}};
  const ConvexPolygon p = build_polygon(pts);
  EXPECT_EQ(p.size(), 3u);
  EXPECT_NEAR(p.area(), 0.5, 1e-15);
}

TEST(BuildPolygon, InteriorPointDropped) {
  const std::vector<Vec2> pts{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}};
  const ConvexPolygon p = build_polygon(pts);
  EXPECT_EQ(p.size(), 4u);
  EXPECT_NEAR(p.area(), 1.0, 1e-15);
}

TEST(BuildPolygon, CollinearInputIsDegenerate) {
  const std::vector<Vec2> pts{{0, 0}, {1, 0}, {2, 0}};
  EXPECT_THROW(build_polygon(pts), DegenerateInput);
}

TEST(ConvexPolygon, RejectsClockwiseAndDuplicates) {
  EXPECT_THROW(ConvexPolygon({{0, 0}, {0, 1}, {1, 0}}), InvalidPolygon);
  EXPECT_THROW(ConvexPolygon({{0, 0}, {1, 0}, {1, 0}, {0, 1}}), InvalidPolygon);
  EXPECT_THROW(ConvexPolygon({{0, 0}, {1, 0}}), InvalidPolygon);
  EXPECT_THROW(ConvexPolygon({{0, 0}, {2, 0}, {1, 0.1}, {2, 1}, {0, 1}}), InvalidPolygon);
}

// ------------------------------------------------------------------- width

TEST(MinWidth, EquilateralTriangleOfHeightOne) {
  const MinWidth w = min_width(build_unit_triangle());
  EXPECT_NEAR(w.width, 1.0, 1e-14);
  EXPECT_NEAR(width_at(build_unit_triangle(), w.theta), 1.0, 1e-14);
}

TEST(MinWidth, FineRegularPolygonApproachesDiskWidth) {
  const MinWidth w = min_width(build_regular_polygon(720, 0.5));
  EXPECT_NEAR(w.width, 1.0, 1e-4);
}

// At r = 0.4 no admissible cap arrangement leaves two antipodal points of
// the incircle exposed (that needs alpha <= pi/4, i.e. r >= sqrt(2)-1), so
// the clustered configuration uses r = 0.45: exposed antipodal arcs make
// the minimal width equal to the incircle diameter.
TEST(MinWidth, ClusteredCapsExposeIncircleDiameter) {
  const ThreeCapParams params{0.45, 0.0, 1.3, 2.7, 2048};
  const ConvexPolygon p = build_three_cap(params);
  const MinWidth w = min_width(p);
  EXPECT_NEAR(w.width, 0.9, 1e-6);
  const double sampled = ts::brute_force_min_width(p);
  EXPECT_LE(w.width, sampled + 1e-12);
  EXPECT_NEAR(sampled, w.width, 1e-7);
}

TEST(MinWidth, MatchesBruteForceSampling) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const ConvexPolygon p = ts::random_convex_polygon(rng);
    const double exact = min_width(p).width;
    const double sampled = ts::brute_force_min_width(p);
    EXPECT_LE(exact, sampled + 1e-12);
    EXPECT_NEAR(exact, sampled, 1e-9) << "trial " << trial;
  }
}

TEST(MinWidth, MonotoneUnderInclusion) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const ConvexPolygon outer = ts::random_convex_polygon(rng);
    // Inner body: hull of random convex combinations of the outer vertices.
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Vec2> pts;
    for (int k = 0; k < 12; ++k) {
      const Vec2 a = outer.vertex(rng() % outer.size()), b = outer.vertex(rng() % outer.size()),
                 c = outer.vertex(rng() % outer.size());
      double l1 = u(rng), l2 = u(rng), l3 = u(rng);
      const double s = l1 + l2 + l3;
      pts.push_back((l1 * a + l2 * b + l3 * c) / s);
    }
    try {
      const ConvexPolygon inner = build_polygon(pts);
      ASSERT_TRUE(polygon_contains(outer, inner, 1e-9));
      EXPECT_LE(min_width(inner).width, min_width(outer).width + 1e-12);
    } catch (const DegenerateInput&) {
    }
  }
}

// ---------------------------------------------------------------- incircle

TEST(Incircle, UnitSquare) {
  const Incircle c = incircle(unit_square());
  EXPECT_NEAR(c.radius, 0.5, 1e-12);
  EXPECT_NEAR(c.center.x, 0.5, 1e-12);
  EXPECT_NEAR(c.center.y, 0.5, 1e-12);
}

TEST(Incircle, UnitTriangle) {
  const Incircle c = incircle(build_unit_triangle());
  EXPECT_NEAR(c.radius, 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(norm(c.center), 0.0, 1e-12);
}

TEST(Incircle, ThreeCapRecoversConstructionRadius) {
  const ConvexPolygon p = build_three_cap(ThreeCapParams::equilateral(0.4));
  const Incircle c = incircle(p);
  // Chords sit slightly inside the circle: r cos(half chord angle).
  EXPECT_NEAR(c.radius, 0.4, 1e-6);
  EXPECT_LE(c.radius, 0.4);
  const double chord_angle = (kTwoPi / 3.0 - 2.0 * cap_half_angle(0.4)) / 256.0;
  EXPECT_NEAR(c.radius, 0.4 * std::cos(0.5 * chord_angle), 1e-12);
  EXPECT_NEAR(norm(c.center), 0.0, 1e-9);
}

TEST(Incircle, MatchesGridSearchOracle) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const ConvexPolygon p = ts::random_convex_polygon(rng);
    const Incircle c = incircle(p);
    const Incircle oracle = ts::brute_force_incircle(p);
    EXPECT_NEAR(c.radius, oracle.radius, 1e-9) << "trial " << trial;
    EXPECT_GE(c.radius, ts::grid_search_incircle(p).radius - 1e-12);
    EXPECT_NEAR(p.signed_distance(c.center), c.radius, 1e-9);
  }
}

// ----------------------------------------------------------- inner parallel

TEST(InnerParallel, OffsetSquare) {
  const ConvexPolygon q = inner_parallel(unit_square(), 0.1);
  EXPECT_NEAR(q.area(), 0.64, 1e-14);
  EXPECT_EQ(q.tag(0).empty(), false);
}

TEST(InnerParallel, ZeroOffsetIsIdentity) {
  const ConvexPolygon p = build_three_cap(ThreeCapParams::equilateral(0.4));
  const ConvexPolygon q = inner_parallel(p, 0.0);
  ASSERT_EQ(q.size(), p.size());
  for (std::size_t i = 0; i < p.size(); ++i) EXPECT_EQ(q.vertex(i), p.vertex(i));
}

TEST(InnerParallel, TriangleIsHomothetic) {
  const ConvexPolygon q = inner_parallel(build_unit_triangle(), 1.0 / 6.0);
  EXPECT_NEAR(q.area(), 0.25 * kSqrt3 / 3.0, 1e-14);
  EXPECT_EQ(q.size(), 3u);
}

TEST(InnerParallel, EmptyBeyondInradius) {
  EXPECT_THROW(inner_parallel(unit_square(), 0.5), EmptyBody);
  EXPECT_THROW(inner_parallel(unit_square(), 0.7), EmptyBody);
  EXPECT_EQ(inner_parallel_area(unit_square(), 0.7), 0.0);
}

// Tangential polygons (every edge touches the incircle) shrink homothetically.
TEST(InnerParallel, TangentialPolygonsShrinkHomothetically) {
  for (const ConvexPolygon& p : {unit_square(), build_unit_triangle(), build_regular_polygon(9, 0.7)}) {
    const double r = incircle(p).radius;
    for (double frac : {0.05, 0.3, 0.61, 0.9}) {
      const double t = frac * r;
      EXPECT_NEAR(inner_parallel_area(p, t), p.area() * (r - t) * (r - t) / (r * r), 1e-10);
    }
  }
}

// Chords make the three-cap polygon only approximately tangential.
TEST(InnerParallel, ThreeCapNearlyHomothetic) {
  const ConvexPolygon p = build_three_cap(ThreeCapParams::equilateral(0.42, 256));
  const double r = 0.42;
  for (double t : {0.05, 0.2, 0.35}) {
    const double expected = p.area() * (r - t) * (r - t) / (r * r);
    EXPECT_NEAR(inner_parallel_area(p, t) / expected, 1.0, 2e-6);
  }
}

TEST(InnerParallel, AreaStrictlyDecreasing) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const ConvexPolygon p = ts::random_convex_polygon(rng);
    const double r = incircle(p).radius;
    double prev = p.area();
    for (int k = 1; k < 50; ++k) {
      const double a = inner_parallel_area(p, r * k / 50.0);
      EXPECT_LT(a, prev);
      prev = a;
    }
  }
}

TEST(InnerParallel, MatchesIterativeClippingOracle) {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const ConvexPolygon p = ts::random_convex_polygon(rng, 40);
    const double t = 0.4 * incircle(p).radius;
    // Sutherland-Hodgman clipping of the polygon by each offset half-plane.
    std::vector<Vec2> poly = p.vertices();
    for (std::size_t i = 0; i < p.size(); ++i) {
      const Vec2 nrm = p.outward_normal(i);
      const double c = dot(nrm, p.vertex(i)) - t;
      std::vector<Vec2> out;
      for (std::size_t k = 0; k < poly.size(); ++k) {
        const Vec2 a = poly[k], b = poly[(k + 1) % poly.size()];
        const double da = c - dot(nrm, a), db = c - dot(nrm, b);
        if (da >= 0) out.push_back(a);
        if ((da >= 0) != (db >= 0)) out.push_back(a + (da / (da - db)) * (b - a));
      }
      poly = out;
    }
    double twice = 0.0;
    for (std::size_t k = 0; k < poly.size(); ++k) twice += cross(poly[k], poly[(k + 1) % poly.size()]);
    EXPECT_NEAR(inner_parallel_area(p, t), 0.5 * twice, 1e-12);
  }
}

// --------------------------------------------------------------- three-cap

TEST(ThreeCap, SmallestInradiusGivesUnitTriangle) {
  const ConvexPolygon p = build_three_cap(ThreeCapParams::equilateral(1.0 / 3.0));
  EXPECT_NEAR(p.area(), kSqrt3 / 3.0, 1e-12);
  EXPECT_NEAR(min_width(p).width, 1.0, 1e-12);
  EXPECT_NEAR(incircle(p).radius, 1.0 / 3.0, 1e-12);
  // Only the three apexes and the three tangency points remain.
  EXPECT_EQ(p.size(), 6u);
}

TEST(ThreeCap, HalfInradiusGivesDisk) {
  const ConvexPolygon p = build_three_cap({0.5, 0.3, 2.0, 4.4, 256});
  EXPECT_NEAR(p.area(), kPi / 4.0, 1e-4);
  for (const Vec2& v : p.vertices()) EXPECT_NEAR(norm(v), 0.5, 1e-12);
  EXPECT_NEAR(min_width(p).width, 1.0, 1e-4);
}

TEST(ThreeCap, AreaMatchesClosedForm) {
  const ConvexPolygon p = build_three_cap(ThreeCapParams::equilateral(0.4, 256));
  EXPECT_NEAR(p.area(), cap_area_f(0.4).f, 2e-4);
}

TEST(ThreeCap, ApexesAtDistanceOneMinusR) {
  const ThreeCapParams params{0.4, 0.0, 2.0, -2.2, 64};
  const ThreeCapLayout L = three_cap_layout(params);
  const ConvexPolygon p = build_three_cap(params);
  for (const CapVertex& c : L.caps) {
    EXPECT_NEAR(norm(c.apex), 0.6, 1e-15);
    EXPECT_TRUE(std::find(p.vertices().begin(), p.vertices().end(), c.apex) != p.vertices().end());
    // Tangent segments are tangent to the incircle.
    EXPECT_NEAR(dot(c.apex - c.S, c.S), 0.0, 1e-14);
    EXPECT_NEAR(dot(c.apex - c.T, c.T), 0.0, 1e-14);
  }
  std::set<std::string> tags(p.edge_tags().begin(), p.edge_tags().end());
  for (const char* t : {"segment:AS", "segment:AT", "segment:BS", "segment:BT", "segment:CS", "segment:CT",
                        "arc:AB", "arc:BC", "arc:CA"})
    EXPECT_TRUE(tags.count(t)) << t;
}

TEST(ThreeCap, OverlappingCapsRejected) {
  EXPECT_THROW(build_three_cap({0.4, 0.0, 0.9, 1.8, 64}), CapsOverlap);
  EXPECT_THROW(build_three_cap({0.3, 0.0, 2.0, 4.0, 64}), DomainError);
  // Touching caps are admissible.
  const double a = cap_half_angle(0.4);
  EXPECT_NO_THROW(build_three_cap({0.4, 0.0, 2 * a, 4 * a, 64}));
}

TEST(ThreeCap, AreaConvergesQuadraticallyInArcCount) {
  const double exact = cap_area_f(0.44).f;
  double prev_err = 0.0;
  for (int n : {8, 16, 32, 64}) {
    const double err = exact - build_three_cap(ThreeCapParams::equilateral(0.44, n)).area();
    EXPECT_GT(err, 0.0);
    if (prev_err > 0.0) {
      EXPECT_NEAR(prev_err / err, 4.0, 0.05);
    }
    prev_err = err;
  }
}

// ----------------------------------------------------------------- area f

TEST(CapArea, EndpointValues) {
  EXPECT_NEAR(cap_area_f(1.0 / 3.0).f, kSqrt3 / 3.0, 1e-14);
  EXPECT_NEAR(cap_area_f(0.5).f, kPi / 4.0, 1e-14);
  EXPECT_GT(cap_area_f(0.4).fprime, 0.0);
  EXPECT_THROW(cap_area_f(0.3), DomainError);
  EXPECT_THROW(cap_area_f(0.51), DomainError);
}

TEST(CapArea, DerivativeMatchesCentralDifference) {
  for (int i = 1; i < 40; ++i) {
    const double r = 1.0 / 3.0 + (0.5 - 1.0 / 3.0) * i / 40.0;
    const double h = 1e-6;
    const double fd = (cap_area_f(r + h).f - cap_area_f(r - h).f) / (2 * h);
    EXPECT_NEAR(cap_area_f(r).fprime, fd, 1e-7) << r;
  }
}

TEST(CapArea, StrictlyIncreasingOnGrid) {
  double prev = cap_area_f(1.0 / 3.0).f;
  for (int i = 1; i <= 999; ++i) {
    const double r = 1.0 / 3.0 + (0.5 - 1.0 / 3.0) * i / 999.0;
    const CapArea a = cap_area_f(r);
    EXPECT_GT(a.f, prev);
    EXPECT_GE(a.fprime, 0.0);
    prev = a.f;
  }
}

// --------------------------------------------------- hexagon and slice

TEST(Hexagon, RegularAtHalf) {
  const ConvexPolygon h = build_hexagon(0.5);
  for (const Vec2& v : h.vertices()) EXPECT_NEAR(norm(v), 0.5, 1e-15);
  EXPECT_NEAR(h.area(), 1.5 * kSqrt3 * 0.25, 1e-15);
}

TEST(Hexagon, AlternatingRadiiAtOneThird) {
  const ConvexPolygon h = build_hexagon(1.0 / 3.0);
  for (std::size_t k = 0; k < 6; ++k) EXPECT_NEAR(norm(h.vertex(k)), k % 2 == 0 ? 2.0 / 3.0 : 1.0 / 3.0, 1e-15);
  // H_{1/3} is the unit equilateral triangle.
  EXPECT_NEAR(h.area(), kSqrt3 / 3.0, 1e-14);
}

TEST(Hexagon, ContainedInEquilateralThreeCap) {
  for (int i = 0; i <= 16; ++i) {
    const double r = 1.0 / 3.0 + (0.5 - 1.0 / 3.0) * i / 16.0;
    EXPECT_TRUE(polygon_contains(build_three_cap(ThreeCapParams::equilateral(r)), build_hexagon(r), 1e-9)) << r;
  }
}

TEST(Slice, SymmetricAtHalf) {
  const ConvexPolygon s = build_slice_triangle(0.5);
  EXPECT_NEAR(distance(s.vertex(0), s.vertex(1)), 0.5, 1e-15);
  EXPECT_NEAR(distance(s.vertex(0), s.vertex(2)), 0.5, 1e-15);
  EXPECT_EQ(s.tag(1), "dirichlet");
  EXPECT_EQ(s.tag(0), "neumann");
  EXPECT_EQ(s.tag(2), "neumann");
}

TEST(Slice, LawOfCosinesAtOneThird) {
  const ConvexPolygon s = build_slice_triangle(1.0 / 3.0);
  const double yz2 = norm2(s.vertex(2) - s.vertex(1));
  EXPECT_NEAR(yz2, 1.0 / 9.0 + 4.0 / 9.0 - 2.0 * (1.0 / 3.0) * (2.0 / 3.0) * 0.5, 1e-15);
  EXPECT_NEAR(yz2, 1.0 / 3.0, 1e-15);
}

TEST(Slice, SixSlicesTileHexagon) {
  for (int i = 0; i <= 16; ++i) {
    const double r = 1.0 / 3.0 + (0.5 - 1.0 / 3.0) * i / 16.0;
    EXPECT_NEAR(6.0 * build_slice_triangle(r).area(), build_hexagon(r).area(), 1e-12);
  }
}

}  // namespace
