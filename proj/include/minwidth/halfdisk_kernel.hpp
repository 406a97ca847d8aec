#ifndef MINWIDTH_HALFDISK_KERNEL_HPP
#define MINWIDTH_HALFDISK_KERNEL_HPP

// Harmonic functions on the upper half disk D+ with data on the circular
// boundary, through the antisymmetrically reflected Poisson kernel
//
//   u(r e^{it}) = (1 - r^2) / (2 pi) * int_0^pi f(s) Q(r, t, s) ds,
//   Q(r, t, s)  = 1 / |r e^{it} - e^{is}|^2 - 1 / |r e^{-it} - e^{is}|^2,
//
// plus the critical-point analysis of s -> Q and the sliding-arc experiments.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "minwidth/errors.hpp"
#include "minwidth/fem.hpp"
#include "minwidth/geometry.hpp"
#include "minwidth/mesh.hpp"
#include "minwidth/shape_analysis.hpp"

namespace minwidth {

inline constexpr double kMaxKernelRadius = 0.9999;

struct KernelPoint {
  double r;
  double t;
  double s;
  double C;  // (1 + r^2) / (2 r)

  static KernelPoint make(double r, double t, double s) {
    if (!(r > 0.0 && r < 1.0)) throw DomainError("KernelPoint: r must lie in (0, 1)");
    return {r, t, s, (1.0 + r * r) / (2.0 * r)};
  }
};

inline double kernel_Q_modulus(double r, double t, double s) {
  using cd = std::complex<double>;
  const cd e = std::polar(1.0, s);
  return 1.0 / std::norm(std::polar(r, t) - e) - 1.0 / std::norm(std::polar(r, -t) - e);
}

// 1 + r^2 - 2 r cos(d) written as (1 - r)^2 + 4 r sin^2(d / 2), which keeps
// full relative accuracy as r -> 1 and d -> 0.
inline double kernel_Q_cosine(double r, double t, double s) {
  auto inv = [r](double d) {
    const double h = std::sin(0.5 * d);
    return 1.0 / ((1.0 - r) * (1.0 - r) + 4.0 * r * h * h);
  };
  return inv(s - t) - inv(s + t);
}

// Cosine form, checked against the complex-modulus form. The tolerance is
// 1e-12 relative to the two kernel terms plus the rounding of the modulus
// form, whose subtraction r e^{it} - e^{is} loses eps / |r e^{it} - e^{is}|.
inline double kernel_Q(const KernelPoint& p) {
  if (!(p.r < 1.0)) throw DomainError("kernel_Q: r must be < 1");
  if (!(p.r >= 0.0)) throw DomainError("kernel_Q: r must be >= 0");
  const double q = kernel_Q_cosine(p.r, p.t, p.s);
  const double m = kernel_Q_modulus(p.r, p.t, p.s);
  const double d1 = std::abs(std::polar(p.r, p.t) - std::polar(1.0, p.s));
  const double d2 = std::abs(std::polar(p.r, -p.t) - std::polar(1.0, p.s));
  const double terms = 1.0 / (d1 * d1) + 1.0 / (d2 * d2);
  const double eps = std::numeric_limits<double>::epsilon();
  if (std::abs(q - m) > (1e-12 + 8.0 * eps / std::min(d1, d2)) * terms)
    throw NumericalFailure("kernel_Q: cosine and modulus forms disagree");
  return q;
}

inline double kernel_Q(double r, double t, double s) {
  if (!(r < 1.0)) throw DomainError("kernel_Q: r must be < 1");
  return kernel_Q(KernelPoint{r, t, s, r > 0.0 ? (1.0 + r * r) / (2.0 * r) : std::numeric_limits<double>::infinity()});
}

// h(X) = X^3 + 2 C cos t - (1 + cos^2 t + C^2) X. The critical points of
// s -> Q(r, t, s) on [0, pi] satisfy h(cos s) = 0.
inline double kernel_cubic(double C, double t, double X) {
  const double c = std::cos(t);
  return X * X * X + 2.0 * C * c - (1.0 + c * c + C * C) * X;
}

struct CubicRoot {
  double X0;
  double s0;  // arccos(X0)
  int iterations;
};

inline CubicRoot cubic_root_X0(double C, double t) {
  if (!(C >= 1.0)) throw DomainError("cubic_root_X0: C must be >= 1");
  if (!(t >= 0.0 && t <= kPi)) throw DomainError("cubic_root_X0: t must lie in [0, pi]");
  double lo = -1.0, hi = 1.0;
  const double h_lo = kernel_cubic(C, t, lo), h_hi = kernel_cubic(C, t, hi);
  if (h_lo == 0.0 || h_hi == 0.0) throw DegenerateEndpoint("cubic_root_X0: the cubic vanishes at an endpoint");
  if (!(h_lo > 0.0 && h_hi < 0.0)) throw NumericalFailure("cubic_root_X0: no sign change on [-1, 1]");
  int it = 0;
  while (hi - lo > 4 * std::numeric_limits<double>::epsilon() && it < 200) {
    const double mid = 0.5 * (lo + hi);
    const double hm = kernel_cubic(C, t, mid);
    if (hm == 0.0) {
      lo = hi = mid;
      break;
    }
    (hm > 0.0 ? lo : hi) = mid;
    ++it;
  }
  const double x0 = 0.5 * (lo + hi);
  const double c = std::cos(t), tol = 1e-12;
  if ((t <= kPi / 2 && x0 > c + tol) || (t >= kPi / 2 && x0 < c - tol))
    throw NumericalFailure("cubic_root_X0: root on the wrong side of cos t");
  return {x0, std::acos(std::clamp(x0, -1.0, 1.0)), it};
}

// Number of sign changes of h on a uniform grid of [-1, 1] (exact zeros
// count as a change).
inline int cubic_sign_changes(double C, double t, int samples = 10000) {
  int changes = 0;
  double prev = kernel_cubic(C, t, -1.0);
  for (int i = 1; i <= samples; ++i) {
    const double v = kernel_cubic(C, t, -1.0 + 2.0 * i / samples);
    if ((prev > 0.0 && v <= 0.0) || (prev < 0.0 && v >= 0.0) || (prev == 0.0 && v != 0.0)) ++changes;
    prev = v;
  }
  return changes;
}

// ---------------------------------------------------------------------------
// Composite Gauss-Legendre quadrature.

namespace detail {

template <int N>
struct GaussLegendre {
  std::array<double, N> x{};
  std::array<double, N> w{};

  GaussLegendre() {
    for (int i = 0; i < N; ++i) {
      double z = std::cos(kPi * (i + 0.75) / (N + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = z;
        for (int k = 2; k <= N; ++k) {
          const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = N * (z * p1 - p0) / (z * z - 1.0);
        const double dz = p1 / dp;
        z -= dz;
        if (std::abs(dz) < 1e-16) break;
      }
      x[i] = z;
      w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
  }
};

inline const GaussLegendre<32>& gauss32() {
  static const GaussLegendre<32> g;
  return g;
}

inline double composite_gauss(const std::function<double(double)>& f, double a, double b, int panels) {
  const auto& g = gauss32();
  const double w = (b - a) / panels;
  double s = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double c = a + (p + 0.5) * w;
    for (int i = 0; i < 32; ++i) s += g.w[i] * f(c + 0.5 * w * g.x[i]);
  }
  return 0.5 * w * s;
}

}  // namespace detail

struct QuadratureResult {
  double value;
  int panels;
};

// Doubles the panel count until two successive values agree to rel_tol.
inline QuadratureResult adaptive_gauss(const std::function<double(double)>& f, double a, double b,
                                       double rel_tol = 1e-10, int max_panels = 1 << 16) {
  if (!(b > a)) return {0.0, 0};
  int n = 1;
  double prev = detail::composite_gauss(f, a, b, n);
  while (n < max_panels) {
    n *= 2;
    const double cur = detail::composite_gauss(f, a, b, n);
    if (std::abs(cur - prev) <= rel_tol * std::abs(cur)) return {cur, n};
    prev = cur;
  }
  throw QuadratureNotConverged("adaptive_gauss: no agreement to " + std::to_string(rel_tol) + " after " +
                               std::to_string(max_panels) + " panels");
}

// ---------------------------------------------------------------------------
// Sliding-arc problems on D+.

using Profile = std::function<double(double)>;

inline Profile sine_bump(double delta) {
  return [delta](double x) { return (x <= 0.0 || x >= delta) ? 0.0 : std::sin(kPi * x / delta); };
}

struct SlidingArcProblem {
  double theta;
  double delta;
  Profile phi;
  Profile psi;           // data on arguments [0, psi_end]; empty when absent
  double psi_end = 0.0;
  double rel_tol = 1e-10;

  void validate() const {
    if (!(delta > 0.0)) throw DomainError("SlidingArcProblem: delta must be positive");
    if (!(theta > 0.0 && theta + delta <= kPi + 1e-15))
      throw DomainError("SlidingArcProblem: need 0 < theta and theta + delta <= pi");
    if (!phi) throw DomainError("SlidingArcProblem: missing bump profile");
    if (psi && !(psi_end > 0.0 && psi_end <= theta))
      throw DomainError("SlidingArcProblem: psi must live on [0, psi_end] with 0 < psi_end <= theta");
  }

  // Boundary value on the circular arc at argument s.
  double data(double s) const {
    double v = 0.0;
    if (s >= theta && s <= theta + delta) v += phi(s - theta);
    if (psi && s >= 0.0 && s <= psi_end) v += psi(s);
    return v;
  }
};

inline double solve_u_theta(const SlidingArcProblem& p, double r, double t) {
  p.validate();
  if (!(r > 0.0 && r <= kMaxKernelRadius)) throw DomainError("solve_u_theta: r must lie in (0, 0.9999]");
  if (!(t > 0.0 && t < kPi)) throw DomainError("solve_u_theta: t must lie in (0, pi)");
  auto integrand = [&](const Profile& f, double shift) {
    return [&, shift](double s) { return f(s - shift) * kernel_Q_cosine(r, t, s); };
  };
  double sum = adaptive_gauss(integrand(p.phi, p.theta), p.theta, p.theta + p.delta, p.rel_tol).value;
  if (p.psi) sum += adaptive_gauss(integrand(p.psi, 0.0), 0.0, p.psi_end, p.rel_tol).value;
  return (1.0 - r * r) / kTwoPi * sum;
}

inline std::vector<double> solve_u_theta(const SlidingArcProblem& p, const std::vector<std::array<double, 2>>& points) {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& q : points) out.push_back(solve_u_theta(p, q[0], q[1]));
  return out;
}

// Upper half disk with "arc" and "diameter" tags.
inline ConvexPolygon build_half_disk(int n_arc = 256) {
  if (n_arc < 2) throw DomainError("build_half_disk: n_arc must be at least 2");
  std::vector<Vec2> v;
  std::vector<std::string> tags;
  for (int i = 0; i <= n_arc; ++i) {
    v.push_back(polar(1.0, kPi * i / n_arc));
    tags.push_back(i < n_arc ? "arc" : "diameter");
  }
  return ConvexPolygon(std::move(v), std::move(tags));
}

// Finite-element counterpart of solve_u_theta on a meshed half disk.
inline ScalarField solve_u_theta_fem(const SlidingArcProblem& p, const TriMesh& mesh) {
  p.validate();
  return solve_harmonic(mesh, [&](const std::string& tag, double, Vec2 x) {
    return tag == "arc" ? p.data(std::atan2(x.y, x.x)) : 0.0;
  });
}

struct SlideReport {
  double t;
  double theta;
  double theta_prime;
  std::vector<double> r;
  std::vector<double> u_theta;
  std::vector<double> u_theta_prime;
  std::vector<double> difference;  // u_theta - u_theta_prime
  std::optional<double> threshold; // smallest grid r from which difference > 0 through the end of the grid
  int sign_changes = 0;            // along the grid; > 1 flags non-monotone behaviour
};

inline SlideReport slide_monotonicity(double t, double theta, double theta_prime, double delta, const Profile& phi,
                                      const std::vector<double>& r_grid, const Profile& psi = {},
                                      double psi_end = 0.0) {
  if (!(t > 0.0 && t < theta)) throw DomainError("slide_monotonicity: need 0 < t < theta");
  if (!(theta <= theta_prime)) throw DomainError("slide_monotonicity: need theta <= theta_prime");
  if (!(theta_prime + delta <= kPi + 1e-15)) throw DomainError("slide_monotonicity: need theta_prime + delta <= pi");
  if (!std::is_sorted(r_grid.begin(), r_grid.end())) throw DomainError("slide_monotonicity: r_grid must be sorted");
  SlidingArcProblem a{theta, delta, phi, psi, psi_end}, b{theta_prime, delta, phi, psi, psi_end};
  SlideReport rep{t, theta, theta_prime, r_grid, {}, {}, {}, std::nullopt, 0};
  for (double r : r_grid) {
    rep.u_theta.push_back(solve_u_theta(a, r, t));
    rep.u_theta_prime.push_back(solve_u_theta(b, r, t));
    rep.difference.push_back(rep.u_theta.back() - rep.u_theta_prime.back());
  }
  for (std::size_t i = 1; i < rep.difference.size(); ++i)
    if ((rep.difference[i] > 0.0) != (rep.difference[i - 1] > 0.0)) ++rep.sign_changes;
  for (std::size_t i = rep.difference.size(); i-- > 0;) {
    if (!(rep.difference[i] > 0.0)) break;
    rep.threshold = rep.r[i];
  }
  return rep;
}

// ---------------------------------------------------------------------------
// The half disk with an external point A on the real axis.

// conv(D+, A) for A = (z_A, 0): segment "AT" from A to the tangency point
// T = e^{i t0}, t0 = arccos(1 / z_A), the arc "arc" from T to A' = -1 and
// the diameter "diameter" back to A.
inline ConvexPolygon build_convhull_half_disk(double z_A, int n_arc = 256) {
  if (!(z_A > 1.0)) throw DomainError("build_convhull_half_disk: z_A must exceed 1");
  const double t0 = std::acos(1.0 / z_A);
  std::vector<Vec2> v{{z_A, 0.0}};
  std::vector<std::string> tags{"AT"};
  const int n = std::max(2, int(std::ceil(n_arc * (kPi - t0) / kPi)));
  for (int i = 0; i <= n; ++i) {
    v.push_back(polar(1.0, t0 + (kPi - t0) * i / n));
    tags.push_back(i < n ? "arc" : "diameter");
  }
  return ConvexPolygon(std::move(v), std::move(tags));
}

struct ConvhullSlide {
  ComparisonTable cap;      // parameter = sample index; lhs u_theta, rhs u_theta', h/2 values, errors per row
  ComparisonTable flux_AT;  // parameter = arclength from A; lhs / rhs squared normal derivatives
  std::vector<Vec2> cap_points;
  double t0;
};

// Interior sample points of the half cap bounded by AT, the unit circle
// and the real axis, kept at least `margin` away from its boundary.
inline std::vector<Vec2> half_cap_samples(double z_A, double margin, int per_axis = 12) {
  const double t0 = std::acos(1.0 / z_A);
  const Vec2 A{z_A, 0.0}, T = polar(1.0, t0);
  const Vec2 d = (T - A) / norm(T - A);
  std::vector<Vec2> pts;
  for (int j = 1; j < per_axis; ++j) {
    for (int i = 1; i < per_axis; ++i) {
      const Vec2 p{1.0 + (z_A - 1.0) * i / per_axis, std::sin(t0) * j / per_axis};
      if (p.y < margin) continue;
      if (norm(p) < 1.0 + margin) continue;
      if (cross(d, p - A) < margin) continue;  // interior lies left of A->T
      pts.push_back(p);
    }
  }
  return pts;
}

inline ConvhullSlide convhull_slide_experiment(double z_A, double theta, double theta_prime, double delta,
                                               const Profile& phi, double h_mesh, double margin = 0.02) {
  if (!(theta <= theta_prime && theta_prime + delta <= kPi + 1e-15))
    throw DomainError("convhull_slide_experiment: need theta <= theta_prime <= pi - delta");
  ConvhullSlide out;
  out.t0 = std::acos(1.0 / std::max(z_A, 1.0));
  if (!(z_A > 1.0)) throw DomainError("convhull_slide_experiment: z_A must exceed 1");
  if (!(out.t0 < theta)) throw DomainError("convhull_slide_experiment: the arc must start beyond the tangency point");
  const ConvexPolygon K = build_convhull_half_disk(z_A, 512);
  out.cap_points = half_cap_samples(z_A, margin);
  if (out.cap_points.empty()) throw DomainError("convhull_slide_experiment: no interior cap samples");
  const Vec2 A{z_A, 0.0}, T = polar(1.0, out.t0);
  const std::vector<double> flux_s{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};

  struct Values {
    std::vector<double> cap;
    std::vector<double> flux2;
  };
  auto run = [&](double h, double th) {
    const TriMesh mesh = mesh_polygon(K, h);
    const SlidingArcProblem p{th, delta, phi, {}, 0.0};
    const ScalarField u = solve_harmonic(mesh, [&](const std::string& tag, double, Vec2 x) {
      return tag == "arc" ? p.data(std::atan2(x.y, x.x)) : 0.0;
    });
    const PointLocator loc(mesh);
    Values v;
    for (const Vec2& q : out.cap_points) v.cap.push_back(loc.interpolate(u.values, q));
    const BoundaryFlux f = boundary_flux(mesh, u, 0.0);
    for (double s : flux_s) {
      const Vec2 q = A + s * (T - A);
      double best = std::numeric_limits<double>::max(), val = 0.0;
      for (std::size_t k = 0; k < f.edges.size(); ++k) {
        if (f.edges[k].tag != "AT") continue;
        const Vec2 a = mesh.nodes[f.edges[k].a], b = mesh.nodes[f.edges[k].b];
        const double tt = std::clamp(dot(q - a, b - a) / norm2(b - a), 0.0, 1.0);
        const double dd = distance(a + tt * (b - a), q);
        if (dd < best) {
          best = dd;
          val = f.at(k, tt);
        }
      }
      v.flux2.push_back(val * val);
    }
    return v;
  };
  const Values c1 = run(h_mesh, theta), c2 = run(h_mesh, theta_prime);
  const Values f1 = run(0.5 * h_mesh, theta), f2 = run(0.5 * h_mesh, theta_prime);

  out.cap.proposition = "u_theta(z) > u_theta'(z) in the half cap of conv(D+, A)";
  out.cap.parameter_name = "sample";
  for (std::size_t i = 0; i < out.cap_points.size(); ++i) {
    const double err = 2.0 * std::abs((c1.cap[i] - c2.cap[i]) - (f1.cap[i] - f2.cap[i]));
    out.cap.add(double(i), f1.cap[i], f2.cap[i], std::max(err, 1e-10 * std::max(f1.cap[i], f2.cap[i])));
  }
  out.flux_AT.proposition = "(d_n u_theta)^2 > (d_n u_theta')^2 on AT";
  out.flux_AT.parameter_name = "fraction from A";
  for (std::size_t i = 0; i < flux_s.size(); ++i) {
    const double err = 2.0 * std::abs((c1.flux2[i] - c2.flux2[i]) - (f1.flux2[i] - f2.flux2[i]));
    out.flux_AT.add(flux_s[i], f1.flux2[i], f2.flux2[i], std::max(err, 1e-10 * std::max(f1.flux2[i], f2.flux2[i])));
  }
  return out;
}

}  // namespace minwidth

#endif  // MINWIDTH_HALFDISK_KERNEL_HPP
