#ifndef MINWIDTH_GEOMETRY_HPP
#define MINWIDTH_GEOMETRY_HPP

// Convex polygons in the plane and the specific bodies used throughout the
// library: three-cap sets (a disk of radius r plus three cap vertices at
// distance 1 - r from its center), the hexagons H_r spanned by an
// equilateral three-cap set, and the slice triangle XYZ that is one sixth of
// H_r. Minimal width is normalized to 1 everywhere.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "minwidth/errors.hpp"
#include "minwidth/vec2.hpp"

namespace minwidth {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Relative tolerance on the cross product of consecutive edges; arc chords
// at high resolution are nearly collinear.
inline constexpr double kCollinearTol = 1e-12;
// Consecutive vertices closer than this are merged by the builders.
inline constexpr double kMergeTol = 1e-10;

inline double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  return a;
}

// Counterclockwise convex polygon with one optional tag per edge. Edge i
// runs from vertex i to vertex i+1 (cyclically). Immutable once built.
class ConvexPolygon {
 public:
  ConvexPolygon(std::vector<Vec2> vertices, std::vector<std::string> edge_tags = {})
      : vertices_(std::move(vertices)), tags_(std::move(edge_tags)) {
    if (tags_.empty()) tags_.assign(vertices_.size(), std::string{});
    validate();
  }

  std::size_t size() const { return vertices_.size(); }
  const std::vector<Vec2>& vertices() const { return vertices_; }
  const std::vector<std::string>& edge_tags() const { return tags_; }
  Vec2 vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }
  const std::string& tag(std::size_t i) const { return tags_[i % tags_.size()]; }

  Vec2 edge_start(std::size_t i) const { return vertex(i); }
  Vec2 edge_end(std::size_t i) const { return vertex(i + 1); }
  Vec2 edge_vector(std::size_t i) const { return vertex(i + 1) - vertex(i); }

  // Outward unit normal of edge i.
  Vec2 outward_normal(std::size_t i) const {
    const Vec2 d = edge_vector(i);
    return Vec2{d.y, -d.x} / norm(d);
  }

  double area() const {
    double twice = 0.0;
    for (std::size_t i = 0; i < size(); ++i) twice += cross(vertex(i), vertex(i + 1));
    return 0.5 * twice;
  }

  double perimeter() const {
    double p = 0.0;
    for (std::size_t i = 0; i < size(); ++i) p += norm(edge_vector(i));
    return p;
  }

  std::pair<Vec2, Vec2> bounding_box() const {
    Vec2 lo{std::numeric_limits<double>::max(), std::numeric_limits<double>::max()};
    Vec2 hi = -lo;
    for (const Vec2& v : vertices_) {
      lo = {std::min(lo.x, v.x), std::min(lo.y, v.y)};
      hi = {std::max(hi.x, v.x), std::max(hi.y, v.y)};
    }
    return {lo, hi};
  }

  double scale() const {
    const auto [lo, hi] = bounding_box();
    return norm(hi - lo);
  }

  // Signed distance from p to the boundary, positive inside.
  double signed_distance(Vec2 p) const {
    double d = std::numeric_limits<double>::max();
    for (std::size_t i = 0; i < size(); ++i)
      d = std::min(d, dot(vertex(i) - p, outward_normal(i)));
    return d;
  }

  bool contains(Vec2 p, double tol = 1e-12) const {
    return signed_distance(p) >= -tol * std::max(1.0, scale());
  }

  // Distance from p to the nearest boundary point (p assumed inside).
  double boundary_distance(Vec2 p) const {
    double d = std::numeric_limits<double>::max();
    for (std::size_t i = 0; i < size(); ++i) {
      const Vec2 a = vertex(i), e = edge_vector(i);
      const double s = std::clamp(dot(p - a, e) / norm2(e), 0.0, 1.0);
      d = std::min(d, distance(p, a + s * e));
    }
    return d;
  }

 private:
  void validate() const {
    const std::size_t n = vertices_.size();
    if (n < 3) throw InvalidPolygon("a polygon needs at least 3 vertices");
    if (tags_.size() != n) throw InvalidPolygon("edge tag count does not match vertex count");
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(vertices_[i].x) || !std::isfinite(vertices_[i].y))
        throw InvalidPolygon("non-finite vertex");
      if (distance(vertex(i), vertex(i + 1)) <= 1e-12)
        throw InvalidPolygon("duplicate consecutive vertices at index " + std::to_string(i));
    }
    const double s2 = scale() * scale();
    for (std::size_t i = 0; i < n; ++i) {
      if (cross(edge_vector(i), edge_vector(i + 1)) < -kCollinearTol * s2)
        throw InvalidPolygon("vertices are not in convex counterclockwise order at index " +
                             std::to_string(i + 1));
    }
    if (area() <= 0.0) throw InvalidPolygon("polygon has non-positive signed area");
  }

  std::vector<Vec2> vertices_;
  std::vector<std::string> tags_;
};

// Counterclockwise convex hull (Andrew's monotone chain); collinear and
// interior points are dropped. Tags are left empty.
inline ConvexPolygon build_polygon(std::span<const Vec2> points) {
  if (points.size() < 3) throw DegenerateInput("need at least 3 points");
  std::vector<Vec2> p(points.begin(), points.end());
  std::sort(p.begin(), p.end(), [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  p.erase(std::unique(p.begin(), p.end()), p.end());
  double scale2 = 0.0;
  if (!p.empty()) scale2 = norm2(p.back() - p.front());
  const double eps = 1e-14 * std::max(scale2, 1e-300);
  std::vector<Vec2> hull(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && orient(hull[k - 2], hull[k - 1], p[i]) <= eps) --k;
    hull[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && orient(hull[k - 2], hull[k - 1], p[i]) <= eps) --k;
    hull[k++] = p[i];
  }
  hull.resize(k > 0 ? k - 1 : 0);
  if (hull.size() < 3) throw DegenerateInput("points are collinear; hull has fewer than 3 vertices");
  return ConvexPolygon(std::move(hull));
}

// Width w(theta): distance between the two support lines orthogonal to
// (cos theta, sin theta).
inline double width_at(const ConvexPolygon& poly, double theta) {
  const Vec2 d{std::cos(theta), std::sin(theta)};
  double lo = std::numeric_limits<double>::max(), hi = -lo;
  for (const Vec2& v : poly.vertices()) {
    lo = std::min(lo, dot(v, d));
    hi = std::max(hi, dot(v, d));
  }
  return hi - lo;
}

struct MinWidth {
  double width;
  double theta;  // direction in [0, pi) attaining the minimum
};

// Rotating calipers. The minimum of the width function of a convex polygon
// is attained in the normal direction of one of its edges, so it suffices to
// pair every edge with its farthest (antipodal) vertex.
inline MinWidth min_width(const ConvexPolygon& poly) {
  const std::size_t n = poly.size();
  auto height = [&](std::size_t edge, std::size_t v) {
    const Vec2 d = poly.edge_vector(edge);
    return cross(d, poly.vertex(v) - poly.vertex(edge)) / norm(d);
  };
  std::size_t j = 1;
  while (height(0, j + 1) > height(0, j) && j < 2 * n) ++j;
  MinWidth best{std::numeric_limits<double>::max(), 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t guard = 0;
    while (height(i, j + 1) >= height(i, j) && guard++ < n) ++j;
    const double w = height(i, j);
    if (w < best.width) {
      const Vec2 nrm = poly.outward_normal(i);
      double th = std::atan2(nrm.y, nrm.x);
      th = std::fmod(th + kTwoPi, kPi);
      best = {w, th};
    }
  }
  return best;
}

struct Incircle {
  Vec2 center;
  double radius;
};

namespace detail {

// Solves the 3x3 system m x = b by Cramer's rule (columns given).
inline bool solve3(const std::array<std::array<double, 3>, 3>& cols, const std::array<double, 3>& b,
                   std::array<double, 3>& x) {
  auto det = [](const std::array<double, 3>& c0, const std::array<double, 3>& c1,
                const std::array<double, 3>& c2) {
    return c0[0] * (c1[1] * c2[2] - c1[2] * c2[1]) - c1[0] * (c0[1] * c2[2] - c0[2] * c2[1]) +
           c2[0] * (c0[1] * c1[2] - c0[2] * c1[1]);
  };
  const double d = det(cols[0], cols[1], cols[2]);
  if (std::abs(d) < 1e-300) return false;
  x[0] = det(b, cols[1], cols[2]) / d;
  x[1] = det(cols[0], b, cols[2]) / d;
  x[2] = det(cols[0], cols[1], b) / d;
  return true;
}

inline bool solve3_transposed(const std::array<std::array<double, 3>, 3>& cols,
                              const std::array<double, 3>& b, std::array<double, 3>& x) {
  std::array<std::array<double, 3>, 3> t{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t[i][j] = cols[j][i];
  return solve3(t, b, x);
}

}  // namespace detail

// Chebyshev center: maximize rho subject to n_i . c + rho <= n_i . p_i for
// every edge. Solved as the dual of a three-row linear program with a
// revised simplex whose basis is a 3x3 matrix; the simplex multipliers of
// the final basis are (c.x, c.y, rho).
inline Incircle incircle(const ConvexPolygon& poly) {
  const std::size_t n = poly.size();
  std::vector<std::array<double, 3>> cols(n);
  std::vector<double> cost(n);
  std::vector<double> angle(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 nr = poly.outward_normal(i);
    cols[i] = {nr.x, nr.y, 1.0};
    cost[i] = dot(nr, poly.vertex(i));
    angle[i] = std::atan2(nr.y, nr.x);
  }
  // Feasible start: three normals whose convex hull contains the origin.
  std::size_t i1 = 0, i2 = 0;
  for (std::size_t k = 1; k < n; ++k) {
    const double rel = wrap_angle(angle[k] - angle[0]);
    if (rel > kPi) {
      i2 = k;
      i1 = k - 1;
      break;
    }
  }
  if (i2 == 0 || i1 == 0) throw NumericalFailure("incircle: no feasible starting basis");
  std::array<std::size_t, 3> basis{0, i1, i2};
  const std::array<double, 3> rhs{0.0, 0.0, 1.0};
  const double s = poly.scale();
  std::array<double, 3> y{};
  const std::size_t max_iter = 20 * n + 100;
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    const std::array<std::array<double, 3>, 3> b{cols[basis[0]], cols[basis[1]], cols[basis[2]]};
    std::array<double, 3> lam{};
    if (!detail::solve3(b, rhs, lam) ||
        !detail::solve3_transposed(b, {cost[basis[0]], cost[basis[1]], cost[basis[2]]}, y))
      throw NumericalFailure("incircle: singular simplex basis");
    // Dantzig pricing; Bland's rule after many iterations to rule out cycling.
    const bool bland = iter > 4 * n;
    std::size_t enter = n;
    double most_negative = -1e-13 * std::max(1.0, s);
    for (std::size_t j = 0; j < n; ++j) {
      const double red = cost[j] - (cols[j][0] * y[0] + cols[j][1] * y[1] + cols[j][2] * y[2]);
      if (red < most_negative) {
        enter = j;
        if (bland) break;
        most_negative = red;
      }
    }
    if (enter == n) return {{y[0], y[1]}, y[2]};
    std::array<double, 3> w{};
    if (!detail::solve3(b, cols[enter], w)) throw NumericalFailure("incircle: singular basis");
    std::size_t leave = 3;
    double best = std::numeric_limits<double>::max();
    for (std::size_t k = 0; k < 3; ++k) {
      if (w[k] > 1e-14) {
        const double ratio = std::max(lam[k], 0.0) / w[k];
        if (ratio < best || (ratio == best && bland && basis[k] < basis[leave])) {
          best = ratio;
          leave = k;
        }
      }
    }
    if (leave == 3) throw NumericalFailure("incircle: unbounded direction");
    basis[leave] = enter;
  }
  throw NumericalFailure("incircle: simplex iteration limit reached");
}

namespace detail {

struct HalfPlane {
  Vec2 point;  // on the boundary line
  Vec2 dir;    // unit direction; the half-plane is to the left
  double angle;
  std::size_t source;  // originating edge
};

inline Vec2 intersect(const HalfPlane& a, const HalfPlane& b) {
  const double den = cross(a.dir, b.dir);
  const double s = cross(b.point - a.point, b.dir) / den;
  return a.point + s * a.dir;
}

inline bool strictly_outside(const HalfPlane& h, Vec2 p, double eps) {
  return cross(h.dir, p - h.point) < -eps;
}

}  // namespace detail

// Half-plane intersection of all edges moved inward by t (sort by angle,
// then the deque sweep). Returns the vertices and the source edge of each
// outgoing edge; empty when the intersection has no interior.
inline std::pair<std::vector<Vec2>, std::vector<std::size_t>> offset_vertices(
    const ConvexPolygon& poly, double t) {
  using detail::HalfPlane;
  const std::size_t n = poly.size();
  const double scale = poly.scale();
  const double eps = 1e-14 * scale;
  std::vector<HalfPlane> planes;
  planes.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 d = poly.edge_vector(i) / norm(poly.edge_vector(i));
    planes.push_back({poly.vertex(i) + t * perp(d), d, std::atan2(d.y, d.x), i});
  }
  std::sort(planes.begin(), planes.end(), [](const HalfPlane& a, const HalfPlane& b) {
    return a.angle < b.angle || (a.angle == b.angle && a.source < b.source);
  });
  // Among (numerically) parallel planes keep the most restrictive one.
  std::vector<HalfPlane> uniq;
  for (const HalfPlane& h : planes) {
    if (!uniq.empty() && std::abs(cross(uniq.back().dir, h.dir)) < 1e-13 &&
        dot(uniq.back().dir, h.dir) > 0.0) {
      if (cross(uniq.back().dir, h.point - uniq.back().point) > 0.0) uniq.back() = h;
      continue;
    }
    uniq.push_back(h);
  }
  std::vector<HalfPlane> dq(uniq.size() + 2);
  std::size_t head = 0, tail = 0;  // dq[head, tail)
  auto bad = [&](const HalfPlane& h, const HalfPlane& a, const HalfPlane& b) {
    if (std::abs(cross(a.dir, b.dir)) < 1e-15) return true;
    return detail::strictly_outside(h, detail::intersect(a, b), eps);
  };
  for (const HalfPlane& h : uniq) {
    while (tail - head >= 2 && bad(h, dq[tail - 1], dq[tail - 2])) --tail;
    while (tail - head >= 2 && bad(h, dq[head], dq[head + 1])) ++head;
    if (tail - head >= 1 && cross(dq[tail - 1].dir, h.dir) <= 0.0) {
      // Turning by pi or more: the region is empty.
      return {};
    }
    dq[tail++] = h;
  }
  while (tail - head >= 3 && bad(dq[head], dq[tail - 1], dq[tail - 2])) --tail;
  while (tail - head >= 3 && bad(dq[tail - 1], dq[head], dq[head + 1])) ++head;
  const std::size_t m = tail - head;
  if (m < 3) return {};
  std::vector<Vec2> verts;
  std::vector<std::size_t> src;
  for (std::size_t k = 0; k < m; ++k) {
    const HalfPlane& prev = dq[head + (k + m - 1) % m];
    const HalfPlane& cur = dq[head + k];
    if (cross(prev.dir, cur.dir) <= 0.0) return {};
    const Vec2 p = detail::intersect(prev, cur);
    if (!verts.empty() && distance(verts.back(), p) <= 1e-12 * std::max(1.0, scale)) {
      src.back() = cur.source;
      continue;
    }
    verts.push_back(p);
    src.push_back(cur.source);
  }
  while (verts.size() >= 2 && distance(verts.back(), verts.front()) <= 1e-12 * std::max(1.0, scale)) {
    verts.pop_back();
    src.pop_back();
  }
  if (verts.size() < 3) return {};
  double twice = 0.0;
  for (std::size_t k = 0; k < verts.size(); ++k) twice += cross(verts[k], verts[(k + 1) % verts.size()]);
  if (twice <= 1e-15 * scale * scale) return {};
  return {std::move(verts), std::move(src)};
}

// Area of the inner parallel body K_{-t}; zero once the body is empty.
inline double inner_parallel_area(const ConvexPolygon& poly, double t) {
  if (t <= 0.0) return poly.area();
  const auto verts = offset_vertices(poly, t).first;
  double twice = 0.0;
  for (std::size_t k = 0; k < verts.size(); ++k) twice += cross(verts[k], verts[(k + 1) % verts.size()]);
  return 0.5 * twice;
}

// Inner parallel body K_{-t}: points of K at distance at least t from the
// boundary. For a polygon this is exactly the intersection of the inward
// offset edge half-planes. Edge tags follow their originating edge.
inline ConvexPolygon inner_parallel(const ConvexPolygon& poly, double t) {
  if (t < 0.0) throw DomainError("inner_parallel: t must be non-negative");
  if (t == 0.0) return poly;
  const double rho = incircle(poly).radius;
  if (t >= rho) throw EmptyBody("inner_parallel: t >= inradius");
  auto [verts, src] = offset_vertices(poly, t);
  if (verts.size() < 3) throw EmptyBody("inner_parallel: offset body degenerated");
  std::vector<std::string> tags;
  tags.reserve(src.size());
  for (std::size_t s : src) tags.push_back(poly.tag(s));
  return ConvexPolygon(std::move(verts), std::move(tags));
}

// ---------------------------------------------------------------------------
// Three-cap sets.

struct ThreeCapParams {
  double r = 0.4;
  double phi_A = 0.0;
  double phi_B = kTwoPi / 3.0;
  double phi_C = 2.0 * kTwoPi / 3.0;
  int n_arc = 256;

  static ThreeCapParams equilateral(double r, int n_arc = 256) {
    return {r, 0.0, kTwoPi / 3.0, 2.0 * kTwoPi / 3.0, n_arc};
  }
};

inline void check_inradius(double r, const char* where) {
  constexpr double tol = 1e-14;
  if (!(r >= 1.0 / 3.0 - tol && r <= 0.5 + tol))
    throw DomainError(std::string(where) + ": r must lie in [1/3, 1/2], got " + std::to_string(r));
}

// Half-angle of the arc hidden by one cap: cos(alpha) = r / (1 - r).
inline double cap_half_angle(double r) {
  check_inradius(r, "cap_half_angle");
  return std::acos(std::clamp(r / (1.0 - r), -1.0, 1.0));
}

struct CapVertex {
  char label;     // 'A', 'B' or 'C'
  double phi;     // direction angle in [0, 2 pi)
  Vec2 apex;      // at distance 1 - r from the center
  Vec2 S;         // tangency point at phi - alpha (first counterclockwise)
  Vec2 T;         // tangency point at phi + alpha
};

struct ThreeCapLayout {
  double r;
  double alpha;
  Vec2 center;                     // the origin
  std::array<CapVertex, 3> caps;   // in label order A, B, C
  std::array<int, 3> ccw_order;    // label indices sorted by angle
  std::array<double, 3> gaps;      // angular gap following each ccw_order entry
};

inline ThreeCapLayout three_cap_layout(const ThreeCapParams& p) {
  check_inradius(p.r, "build_three_cap");
  if (p.n_arc < 1) throw DomainError("build_three_cap: n_arc must be positive");
  ThreeCapLayout L;
  L.r = p.r;
  L.alpha = cap_half_angle(p.r);
  L.center = {0.0, 0.0};
  const std::array<double, 3> phis{wrap_angle(p.phi_A), wrap_angle(p.phi_B), wrap_angle(p.phi_C)};
  const char labels[3] = {'A', 'B', 'C'};
  for (int k = 0; k < 3; ++k) {
    L.caps[k] = {labels[k], phis[k], polar(1.0 - p.r, phis[k]), polar(p.r, phis[k] - L.alpha),
                 polar(p.r, phis[k] + L.alpha)};
  }
  L.ccw_order = {0, 1, 2};
  std::sort(L.ccw_order.begin(), L.ccw_order.end(), [&](int a, int b) { return phis[a] < phis[b]; });
  for (int k = 0; k < 3; ++k) {
    const double a = phis[L.ccw_order[k]];
    const double b = phis[L.ccw_order[(k + 1) % 3]];
    L.gaps[k] = k < 2 ? b - a : b + kTwoPi - a;
    if (L.gaps[k] < 2.0 * L.alpha - 1e-12)
      throw CapsOverlap("caps of " + std::string(1, labels[L.ccw_order[k]]) + " and " +
                        std::string(1, labels[L.ccw_order[(k + 1) % 3]]) + " overlap (gap " +
                        std::to_string(L.gaps[k]) + " < 2 alpha = " + std::to_string(2.0 * L.alpha) + ")");
  }
  return L;
}

namespace detail {

// Drops points whose outgoing edge has length below kMergeTol.
inline ConvexPolygon merged_polygon(std::vector<Vec2> pts, std::vector<std::string> tags) {
  std::vector<Vec2> outp;
  std::vector<std::string> outt;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (distance(pts[i], pts[(i + 1) % pts.size()]) < kMergeTol) continue;
    outp.push_back(pts[i]);
    outt.push_back(std::move(tags[i]));
  }
  return ConvexPolygon(std::move(outp), std::move(outt));
}

}  // namespace detail

// Convex hull of the disk D_r centered at the origin and the three cap
// vertices. Tangent segments are exact; every free arc of D_r is replaced
// by n_arc chords at uniform angular spacing. Tags: "segment:AS",
// "segment:AT", ..., and "arc:AB" for the arc running from cap A to cap B.
inline ConvexPolygon build_three_cap(const ThreeCapParams& p) {
  const ThreeCapLayout L = three_cap_layout(p);
  std::vector<Vec2> pts;
  std::vector<std::string> tags;
  for (int k = 0; k < 3; ++k) {
    const CapVertex& v = L.caps[L.ccw_order[k]];
    const CapVertex& w = L.caps[L.ccw_order[(k + 1) % 3]];
    const std::string vl(1, v.label), wl(1, w.label);
    pts.push_back(v.S);
    tags.push_back("segment:" + vl + "S");
    pts.push_back(v.apex);
    tags.push_back("segment:" + vl + "T");
    const double a0 = v.phi + L.alpha;
    const double arc = L.gaps[k] - 2.0 * L.alpha;
    if (arc * p.r < kMergeTol) continue;
    for (int j = 0; j < p.n_arc; ++j) {
      pts.push_back(j == 0 ? v.T : polar(p.r, a0 + arc * j / p.n_arc));
      tags.push_back("arc:" + vl + wl);
    }
  }
  return detail::merged_polygon(std::move(pts), std::move(tags));
}

struct CapArea {
  double f;       // |T_ABC|
  double fprime;  // d|T_ABC|/dr
};

// Area of any three-cap set of inradius r:
//   f(r)  = 3 r^2 (pi/3 + tan(alpha) - alpha),
//   f'(r) = 6 r (pi/3 - alpha) + 3 (2 r tan(alpha) - sin(alpha)).
inline CapArea cap_area_f(double r) {
  check_inradius(r, "cap_area_f");
  const double a = cap_half_angle(r);
  const double f = 3.0 * r * r * (kPi / 3.0 + std::tan(a) - a);
  const double fp = 6.0 * r * (kPi / 3.0 - a) + 3.0 * (2.0 * r * std::tan(a) - std::sin(a));
  return {f, fp};
}

// Hexagon H_r: vertices at angles k pi/3 with radii alternating 1 - r
// (the cap vertices A, B, C) and r.
inline ConvexPolygon build_hexagon(double r) {
  check_inradius(r, "build_hexagon");
  std::vector<Vec2> pts;
  for (int k = 0; k < 6; ++k) pts.push_back(polar(k % 2 == 0 ? 1.0 - r : r, k * kPi / 3.0));
  return ConvexPolygon(std::move(pts), std::vector<std::string>(6, "hexagon"));
}

// Slice triangle XYZ: X at the origin, XY = r along the x axis, XZ = 1 - r
// at angle pi/3. YZ carries the Dirichlet condition, XY and XZ Neumann.
inline ConvexPolygon build_slice_triangle(double r) {
  check_inradius(r, "build_slice_triangle");
  std::vector<Vec2> pts{{0.0, 0.0}, {r, 0.0}, polar(1.0 - r, kPi / 3.0)};
  return ConvexPolygon(std::move(pts), {"neumann", "dirichlet", "neumann"});
}

// Equilateral triangle of unit height (minimal width 1), centroid at the
// origin, one vertex on the positive x axis.
inline ConvexPolygon build_unit_triangle() {
  return ConvexPolygon({polar(2.0 / 3.0, 0.0), polar(2.0 / 3.0, kTwoPi / 3.0), polar(2.0 / 3.0, 2.0 * kTwoPi / 3.0)},
                       {"side", "side", "side"});
}

inline ConvexPolygon build_regular_polygon(int n, double circumradius, Vec2 center = {}, double phase = 0.0) {
  if (n < 3) throw DegenerateInput("regular polygon needs n >= 3");
  std::vector<Vec2> pts;
  pts.reserve(n);
  for (int k = 0; k < n; ++k) pts.push_back(center + polar(circumradius, phase + kTwoPi * k / n));
  return ConvexPolygon(std::move(pts), std::vector<std::string>(n, "boundary"));
}

// True when every vertex of inner lies in outer.
inline bool polygon_contains(const ConvexPolygon& outer, const ConvexPolygon& inner, double tol = 1e-12) {
  return std::all_of(inner.vertices().begin(), inner.vertices().end(),
                     [&](Vec2 v) { return outer.contains(v, tol); });
}

}  // namespace minwidth

#endif  // MINWIDTH_GEOMETRY_HPP
