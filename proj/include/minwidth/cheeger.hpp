#ifndef MINWIDTH_CHEEGER_HPP
#define MINWIDTH_CHEEGER_HPP

// Cheeger constants of planar convex bodies. For convex K the Cheeger
// constant is 1/t where t > 0 solves |K_{-t}| = pi t^2 (inner parallel body
// area against the disk of radius t).

#include <cmath>
#include <string>

#include "minwidth/errors.hpp"
#include "minwidth/geometry.hpp"

namespace minwidth {

enum class CheegerMethod { bisection, closed_form };

inline const char* to_string(CheegerMethod m) {
  return m == CheegerMethod::bisection ? "bisection" : "closed_form";
}

struct CheegerResult {
  double h;
  double t_star;
  CheegerMethod method;
};

inline constexpr int kCheegerMaxIterations = 80;

// Bisection on (0, inradius). |K_{-t}| decreases and pi t^2 increases, so
// the root is unique and the bracket never needs to move.
inline CheegerResult cheeger_bisection(const ConvexPolygon& poly, double tol = 1e-10) {
  if (!(tol > 0.0 && tol <= 1e-3)) throw DomainError("cheeger_bisection: tol must lie in (0, 1e-3]");
  const double rho = incircle(poly).radius;
  auto g = [&](double t) { return inner_parallel_area(poly, t) - kPi * t * t; };
  double lo = 0.0, hi = rho;
  if (!(g(hi) < 0.0) || !(poly.area() > 0.0))
    throw NumericalFailure("cheeger_bisection: bracket sign test failed");
  for (int it = 0; it < kCheegerMaxIterations && hi - lo > tol * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0.0 ? lo : hi) = mid;
  }
  const double t = 0.5 * (lo + hi);
  return {1.0 / t, t, CheegerMethod::bisection};
}

// Three-cap sets shrink homothetically about the incircle center, so
// (r - t)^2 / r^2 |T_ABC| = pi t^2 and h = 1/r + sqrt(pi / |T_ABC|).
inline CheegerResult cheeger_three_cap(double r) {
  const double area = cap_area_f(r).f;
  const double h = 1.0 / r + std::sqrt(kPi / area);
  return {h, 1.0 / h, CheegerMethod::closed_form};
}

}  // namespace minwidth

#endif  // MINWIDTH_CHEEGER_HPP
