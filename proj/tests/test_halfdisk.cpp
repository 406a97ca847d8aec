#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "minwidth/halfdisk_kernel.hpp"

using namespace minwidth;

namespace {

double C_of(double r) { return (1 + r * r) / (2 * r); }

}  // namespace

TEST(KernelPoint, DerivedConstant) {
  const KernelPoint p = KernelPoint::make(0.5, 1.0, 1.2);
  EXPECT_DOUBLE_EQ(p.C, 1.25);
  EXPECT_GE(KernelPoint::make(0.999, 1.0, 1.0).C, 1.0);
  EXPECT_THROW(KernelPoint::make(1.0, 1.0, 1.0), DomainError);
  EXPECT_THROW(kernel_Q(1.0, 1.0, 1.0), DomainError);
  EXPECT_THROW(kernel_Q(1.5, 1.0, 0.3), DomainError);
}

TEST(Kernel, SpecialValues) {
  EXPECT_GT(kernel_Q(0.5, 1.0, 1.0), 0.0);
  EXPECT_NEAR(kernel_Q(0.7, 1.0, 0.0), 0.0, 1e-15);
  EXPECT_NEAR(kernel_Q(0.7, 1.0, kPi), 0.0, 1e-15);
  // Hand evaluation for r = 0.5, t = 1, s = 1.2.
  const double d1 = 1.25 - std::cos(0.2), d2 = 1.25 - std::cos(2.2);
  EXPECT_NEAR(kernel_Q(0.5, 1.0, 1.2), 1 / d1 - 1 / d2, 1e-12);
  EXPECT_NEAR(kernel_Q(0.5, 1.0, 1.2), kernel_Q_modulus(0.5, 1.0, 1.2), 1e-12);
}

TEST(Kernel, AntisymmetricInS) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double r = 0.99 * u(rng), t = kPi * u(rng), s = kPi * u(rng);
    EXPECT_NEAR(kernel_Q_cosine(r, t, s), -kernel_Q_cosine(r, t, -s), 1e-9 * std::abs(kernel_Q_cosine(r, t, s)) + 1e-15);
  }
}

TEST(Kernel, NonNegativeAndFormsAgree) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const double r = std::max(1e-6, kMaxKernelRadius * u(rng)), t = kPi * u(rng), s = kPi * u(rng);
    EXPECT_GE(kernel_Q(KernelPoint::make(r, t, s)), 0.0);
  }
  // Close to the singularity the check still passes.
  EXPECT_GT(kernel_Q(KernelPoint::make(0.9999, 1.0, 1.0)), 1e7);
}

TEST(Cubic, EndpointIdentities) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double C = 1 + 3 * u(rng), t = kPi * u(rng), c = std::cos(t);
    EXPECT_NEAR(kernel_cubic(C, t, -1), (C + c) * (C + c), 1e-12);
    EXPECT_NEAR(kernel_cubic(C, t, 1), -(C - c) * (C - c), 1e-12);
    EXPECT_NEAR(kernel_cubic(C, t, c), -c * (C - 1) * (C - 1), 1e-12);
    EXPECT_EQ(cubic_sign_changes(C, t, 4000), 1);
  }
}

TEST(Cubic, RootExamples) {
  for (double C : {1.0 + 1e-9, 1.25, 3.0}) {
    const CubicRoot z = cubic_root_X0(C, kPi / 2);
    EXPECT_NEAR(z.X0, 0.0, 1e-14);
    EXPECT_NEAR(z.s0, kPi / 2, 1e-14);
  }
  // X^3 - 2.8125 X + 1.25 = 0; independent Newton iteration from cos t.
  double x = 0.5;
  for (int i = 0; i < 50; ++i) x -= (x * x * x - 2.8125 * x + 1.25) / (3 * x * x - 2.8125);
  const CubicRoot z = cubic_root_X0(1.25, kPi / 3);
  EXPECT_NEAR(z.X0, x, 1e-12);
  EXPECT_NEAR(z.X0, 0.4850102643, 1e-9);
  EXPECT_LT(z.X0, 0.5);
  EXPECT_GT(cubic_root_X0(1.25, 2.0).X0, std::cos(2.0));
}

TEST(Cubic, CriticalPointTendsToT) {
  const double gap = std::abs(cubic_root_X0(C_of(0.999), kPi / 4).s0 - kPi / 4);
  EXPECT_LE(gap, 0.01);
  EXPECT_LT(gap, std::abs(cubic_root_X0(C_of(0.9), kPi / 4).s0 - kPi / 4));
}

TEST(Cubic, DegenerateAndInvalid) {
  EXPECT_THROW(cubic_root_X0(1.0, 0.0), DegenerateEndpoint);
  EXPECT_THROW(cubic_root_X0(1.0, kPi), DegenerateEndpoint);
  EXPECT_THROW(cubic_root_X0(0.9, 1.0), DomainError);
}

TEST(Cubic, KernelUnimodalAboutS0) {
  for (double r : {0.2, 0.6, 0.95}) {
    for (double t : {0.3, 1.2, 2.5}) {
      const double s0 = cubic_root_X0(C_of(r), t).s0;
      const int n = 2000;
      const double ds = kPi / n;
      for (int i = 1; i < n; ++i) {
        const double s = i * ds;
        if (std::abs(s - s0) <= ds) continue;
        const double d = kernel_Q_cosine(r, t, s + ds) - kernel_Q_cosine(r, t, s - ds);
        if (s < s0) {
          EXPECT_GT(d, 0.0) << r << " " << t << " " << s;
        } else {
          EXPECT_LT(d, 0.0) << r << " " << t << " " << s;
        }
      }
    }
  }
}

TEST(Quadrature, GaussLegendreRule) {
  const auto& g = detail::gauss32();
  double w = 0.0;
  for (double v : g.w) w += v;
  EXPECT_NEAR(w, 2.0, 1e-14);
  EXPECT_NEAR(adaptive_gauss([](double x) { return std::exp(x); }, 0.0, 1.0).value, std::exp(1.0) - 1, 1e-13);
  EXPECT_THROW(adaptive_gauss([](double x) { return 1 / std::sqrt(x); }, 0.0, 1.0, 1e-14, 4), QuadratureNotConverged);
}

TEST(SlidingArc, PoissonKernelReproducesHarmonicData) {
  // Data f(s) = sin(s) on the arc comes from the harmonic function y, which
  // vanishes on the diameter.
  const SlidingArcProblem p{1e-9, kPi - 2e-9, [](double x) { return std::sin(x + 1e-9); }, {}, 0.0};
  for (double r : {0.2, 0.5, 0.9})
    for (double t : {0.4, 1.5, 2.7}) EXPECT_NEAR(solve_u_theta(p, r, t), r * std::sin(t), 1e-8);
}

TEST(SlidingArc, ZeroAndPositiveData) {
  const SlidingArcProblem zero{0.8, 0.3, [](double) { return 0.0; }, {}, 0.0};
  EXPECT_EQ(solve_u_theta(zero, 0.5, 1.0), 0.0);
  const SlidingArcProblem bump{0.8, 0.3, sine_bump(0.3), {}, 0.0};
  for (double r : {0.1, 0.5, 0.99, 0.9999}) EXPECT_GT(solve_u_theta(bump, r, 0.3), 0.0);
  EXPECT_THROW(solve_u_theta(bump, 1.0, 0.3), DomainError);
  EXPECT_THROW(solve_u_theta(bump, 0.5, 0.0), DomainError);
  const SlidingArcProblem bad{3.0, 0.3, sine_bump(0.3), {}, 0.0};
  EXPECT_THROW(bad.validate(), DomainError);
}

TEST(SlidingArc, MatchesFiniteElements) {
  const SlidingArcProblem p{0.8, 0.3, sine_bump(0.3), {}, 0.0};
  const TriMesh mesh = mesh_polygon(build_half_disk(512), 0.01);
  const ScalarField u = solve_u_theta_fem(p, mesh);
  const PointLocator loc(mesh);
  for (const auto& q : std::vector<std::array<double, 2>>{{0.5, 0.3}, {0.7, 0.9}, {0.5, 1.5}, {0.8, 2.0}, {0.3, 2.5}})
    EXPECT_NEAR(solve_u_theta(p, q[0], q[1]), loc.interpolate(u.values, polar(q[0], q[1])), 1e-3);
}

TEST(SlidingArc, ExtraDataMatchesFiniteElements) {
  const double t = 0.3;
  const SlidingArcProblem p{0.8, 0.3, sine_bump(0.3), [t](double x) { return x * (t - x); }, t};
  const TriMesh mesh = mesh_polygon(build_half_disk(512), 0.01);
  const ScalarField u = solve_u_theta_fem(p, mesh);
  const PointLocator loc(mesh);
  for (const auto& q : std::vector<std::array<double, 2>>{{0.9, 0.15}, {0.6, 0.5}, {0.5, 2.0}})
    EXPECT_NEAR(solve_u_theta(p, q[0], q[1]), loc.interpolate(u.values, polar(q[0], q[1])), 1e-3);
}

TEST(SlideMonotonicity, ThresholdBelowOne) {
  std::vector<double> grid;
  for (int i = 1; i <= 50; ++i) grid.push_back(0.999 * i / 50);
  const SlideReport rep = slide_monotonicity(0.3, 0.8, 1.2, 0.3, sine_bump(0.3), grid);
  ASSERT_TRUE(rep.threshold.has_value());
  EXPECT_LT(*rep.threshold, 1.0);
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (grid[i] >= *rep.threshold) {
      EXPECT_GT(rep.difference[i], 0.0);
    }
  const SlideReport psi =
      slide_monotonicity(0.3, 0.8, 1.2, 0.3, sine_bump(0.3), grid, [](double x) { return x * (0.3 - x); }, 0.3);
  ASSERT_TRUE(psi.threshold.has_value());
  EXPECT_LT(*psi.threshold, 1.0);
}

TEST(SlideMonotonicity, SameArcGivesZero) {
  const SlideReport rep = slide_monotonicity(0.3, 0.8, 0.8, 0.3, sine_bump(0.3), {0.5, 0.9});
  for (double d : rep.difference) EXPECT_EQ(d, 0.0);
  EXPECT_FALSE(rep.threshold.has_value());
  EXPECT_THROW(slide_monotonicity(0.9, 0.8, 1.2, 0.3, sine_bump(0.3), {0.5}), DomainError);
  EXPECT_THROW(slide_monotonicity(0.3, 1.2, 0.8, 0.3, sine_bump(0.3), {0.5}), DomainError);
}

TEST(ConvexHullSlide, Geometry) {
  const ConvexPolygon K = build_convhull_half_disk(2.0, 128);
  EXPECT_EQ(K.tag(0), "AT");
  EXPECT_NEAR(distance(K.vertex(1), polar(1.0, kPi / 3)), 0.0, 1e-15);
  EXPECT_EQ(K.tag(K.size() - 1), "diameter");
  // Half disk plus the triangle O A T minus the sector of angle pi/3.
  const double exact = kPi / 2 + 0.5 * 2.0 * std::sin(kPi / 3) - kPi / 6;
  EXPECT_NEAR(K.area(), exact, 1e-3);
  for (const Vec2& p : half_cap_samples(2.0, 0.02)) {
    EXPECT_GT(norm(p), 1.0);
    EXPECT_GT(K.boundary_distance(p), 0.0199);
  }
  EXPECT_THROW(build_convhull_half_disk(1.0), DomainError);
}

TEST(ConvexHullSlide, CapValuesDecreaseAsArcSlides) {
  const ConvhullSlide e = convhull_slide_experiment(2.0, 1.3, 1.6, 0.3, sine_bump(0.3), 0.02);
  ASSERT_FALSE(e.cap.rows.empty());
  for (const auto& row : e.cap.rows) EXPECT_GT(row.difference, row.error);
  for (const auto& row : e.flux_AT.rows) EXPECT_GT(row.difference, 0.0);
  const ConvhullSlide same = convhull_slide_experiment(2.0, 1.3, 1.3, 0.3, sine_bump(0.3), 0.04);
  for (const auto& row : same.cap.rows) EXPECT_EQ(row.difference, 0.0);
  EXPECT_THROW(convhull_slide_experiment(2.0, 0.9, 1.6, 0.3, sine_bump(0.3), 0.04), DomainError);
}
