#ifndef MINWIDTH_MESH_HPP
#define MINWIDTH_MESH_HPP

// Conforming triangulations of convex polygons.
//
// mesh_polygon() seeds the boundary (each polygon edge split uniformly) and
// a triangular lattice of interior points anchored at the origin, builds
// their Delaunay triangulation by Bowyer-Watson insertion, and then runs
// Ruppert-style refinement: circumcenters of bad triangles (small angle or
// oversized) are inserted unless they encroach on a boundary subsegment, in
// which case the subsegment is split at its midpoint instead. Boundary
// subsegments inherit the tag of the polygon edge they came from.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "minwidth/errors.hpp"
#include "minwidth/geometry.hpp"

namespace minwidth {

struct BoundaryEdge {
  int a;  // domain lies to the left of a -> b
  int b;
  std::string tag;
};

struct TriMesh {
  std::vector<Vec2> nodes;
  std::vector<std::array<int, 3>> triangles;  // counterclockwise
  std::vector<BoundaryEdge> boundary_edges;
  double h_target = 0.0;

  std::size_t num_nodes() const { return nodes.size(); }
  std::size_t num_triangles() const { return triangles.size(); }

  double triangle_area(std::size_t t) const {
    const auto& v = triangles[t];
    return 0.5 * orient(nodes[v[0]], nodes[v[1]], nodes[v[2]]);
  }

  double area() const {
    double a = 0.0;
    for (std::size_t t = 0; t < triangles.size(); ++t) a += triangle_area(t);
    return a;
  }
};

struct MeshQuality {
  double min_angle_deg;
  double max_edge;
  double min_area;
};

inline MeshQuality mesh_quality(const TriMesh& mesh) {
  MeshQuality q{180.0, 0.0, std::numeric_limits<double>::max()};
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto& v = mesh.triangles[t];
    for (int i = 0; i < 3; ++i) {
      const Vec2 p = mesh.nodes[v[i]], a = mesh.nodes[v[(i + 1) % 3]], b = mesh.nodes[v[(i + 2) % 3]];
      const double ang = std::atan2(std::abs(cross(a - p, b - p)), dot(a - p, b - p));
      q.min_angle_deg = std::min(q.min_angle_deg, ang * 180.0 / kPi);
      q.max_edge = std::max(q.max_edge, distance(a, b));
    }
    q.min_area = std::min(q.min_area, mesh.triangle_area(t));
  }
  return q;
}

// Structural checks: positive areas, closed boundary loops carrying one tag
// per edge, and every interior edge shared by exactly two triangles.
inline void validate_mesh(const TriMesh& mesh) {
  auto key = [](int a, int b) { return (std::uint64_t(std::uint32_t(a)) << 32) | std::uint32_t(b); };
  std::unordered_map<std::uint64_t, int> directed;
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    if (!(mesh.triangle_area(t) > 1e-14)) throw MeshFailure("triangle with non-positive area");
    const auto& v = mesh.triangles[t];
    for (int i = 0; i < 3; ++i)
      if (++directed[key(v[i], v[(i + 1) % 3])] > 1) throw MeshFailure("duplicated directed edge");
  }
  std::unordered_set<std::uint64_t> boundary;
  std::vector<int> out_degree(mesh.num_nodes(), 0), in_degree(mesh.num_nodes(), 0);
  for (const BoundaryEdge& e : mesh.boundary_edges) {
    if (e.tag.empty()) throw MeshFailure("untagged boundary edge");
    if (!directed.count(key(e.a, e.b))) throw MeshFailure("boundary edge is not a triangle edge");
    boundary.insert(key(e.a, e.b));
    ++out_degree[e.a];
    ++in_degree[e.b];
  }
  for (const auto& [k, count] : directed) {
    const int a = int(k >> 32), b = int(k & 0xffffffffu);
    if (!directed.count(key(b, a)) && !boundary.count(k)) throw MeshFailure("hanging edge without boundary tag");
  }
  for (std::size_t i = 0; i < mesh.num_nodes(); ++i)
    if (out_degree[i] != in_degree[i] || out_degree[i] > 1) throw MeshFailure("boundary edges do not form closed loops");
}

struct MeshOptions {
  double min_angle_deg = 20.0;
  double max_edge_factor = 1.5;  // post condition: max edge <= factor * local size
  // Optional geometric grading: size is multiplied by grading_factor within
  // grading_radius of any of these points.
  std::vector<Vec2> graded_points;
  double grading_factor = 0.5;
  double grading_radius = 0.1;
  std::size_t max_nodes = 4'000'000;
};

namespace detail {

inline double incircle_det(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const double adx = a.x - d.x, ady = a.y - d.y;
  const double bdx = b.x - d.x, bdy = b.y - d.y;
  const double cdx = c.x - d.x, cdy = c.y - d.y;
  const double ad = adx * adx + ady * ady, bd = bdx * bdx + bdy * bdy, cd = cdx * cdx + cdy * cdy;
  return adx * (bdy * cd - bd * cdy) - ady * (bdx * cd - bd * cdx) + ad * (bdx * cdy - bdy * cdx);
}

inline Vec2 circumcenter(Vec2 a, Vec2 b, Vec2 c) {
  const Vec2 ab = b - a, ac = c - a;
  const double d = 2.0 * cross(ab, ac);
  const double ab2 = norm2(ab), ac2 = norm2(ac);
  return a + Vec2{(ac.y * ab2 - ab.y * ac2) / d, (ab.x * ac2 - ac.x * ab2) / d};
}

inline std::uint64_t hilbert_index(std::uint32_t x, std::uint32_t y, int order) {
  std::uint64_t d = 0;
  for (std::uint32_t s = 1u << (order - 1); s > 0; s >>= 1) {
    const std::uint32_t rx = (x & s) ? 1 : 0, ry = (y & s) ? 1 : 0;
    d += std::uint64_t(s) * s * ((3 * rx) ^ ry);
    if (ry == 0) {
      if (rx == 1) {
        x = s - 1 - x;
        y = s - 1 - y;
      }
      std::swap(x, y);
    }
  }
  return d;
}

inline std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (std::uint64_t(std::uint32_t(a)) << 32) | std::uint32_t(b);
}

// Incremental Delaunay triangulation with constrained (boundary) edges.
class DelaunayBuilder {
 public:
  struct Tri {
    std::array<int, 3> v;
    std::array<int, 3> nb;  // neighbor across the edge opposite v[i]
    bool alive = true;
  };
  struct Segment {
    int tag;
    int tri;  // a triangle having this edge
  };

  std::vector<Vec2> pts;
  std::vector<Tri> tris;
  std::unordered_map<std::uint64_t, Segment> segments;
  std::vector<std::string> tag_names;

  int add_point(Vec2 p) {
    pts.push_back(p);
    return int(pts.size()) - 1;
  }

  void init_super_triangle(Vec2 lo, Vec2 hi) {
    const Vec2 c = 0.5 * (lo + hi);
    const double s = std::max({hi.x - lo.x, hi.y - lo.y, 1e-3});
    const int a = add_point(c + Vec2{-40.0 * s, -30.0 * s});
    const int b = add_point(c + Vec2{40.0 * s, -30.0 * s});
    const int d = add_point(c + Vec2{0.0, 40.0 * s});
    tris.push_back({{a, b, d}, {-1, -1, -1}, true});
    last_ = 0;
  }

  bool is_constrained(int a, int b) const { return segments.count(edge_key(a, b)) > 0; }

  int edge_index(const Tri& t, int a, int b) const {
    for (int i = 0; i < 3; ++i) {
      const int u = t.v[(i + 1) % 3], w = t.v[(i + 2) % 3];
      if ((u == a && w == b) || (u == b && w == a)) return i;
    }
    return -1;
  }

  struct Location {
    int tri;        // containing triangle, or the last triangle visited
    int exit_edge;  // edge of tri crossed towards p through a hull edge; -1 if inside
  };

  Location locate(Vec2 p, int hint) const {
    int t = (hint >= 0 && hint < int(tris.size()) && tris[hint].alive) ? hint : any_alive();
    std::uint32_t rot = 0;
    const std::size_t limit = 4 * tris.size() + 100;
    for (std::size_t step = 0; step < limit; ++step) {
      const Tri& tr = tris[t];
      int next = -1, exit = -1;
      ++rot;
      for (int k = 0; k < 3; ++k) {
        const int i = int((k + rot) % 3);
        const Vec2 a = pts[tr.v[(i + 1) % 3]], b = pts[tr.v[(i + 2) % 3]];
        if (orient(a, b, p) < -1e-13 * norm2(b - a)) {
          if (tr.nb[i] < 0) {
            exit = i;
            continue;
          }
          next = tr.nb[i];
          break;
        }
      }
      if (next < 0) return {t, exit};
      t = next;
    }
    // The walk cycled; scan for the triangle containing p up to roundoff.
    for (int i = 0; i < int(tris.size()); ++i) {
      if (!tris[i].alive) continue;
      const Tri& tr = tris[i];
      bool inside = true;
      for (int k = 0; k < 3 && inside; ++k) {
        const Vec2 a = pts[tr.v[k]], b = pts[tr.v[(k + 1) % 3]];
        inside = orient(a, b, p) >= -1e-13 * norm2(b - a);
      }
      if (inside) return {i, -1};
    }
    // Outside the triangulated region: report the hull edge crossed by the
    // segment from the hint's centroid to p.
    const Tri& h = tris[(hint >= 0 && hint < int(tris.size()) && tris[hint].alive) ? hint : any_alive()];
    const Vec2 from = (pts[h.v[0]] + pts[h.v[1]] + pts[h.v[2]]) / 3.0;
    for (int i = 0; i < int(tris.size()); ++i) {
      if (!tris[i].alive) continue;
      const Tri& tr = tris[i];
      for (int k = 0; k < 3; ++k) {
        if (tr.nb[k] >= 0) continue;
        const Vec2 a = pts[tr.v[(k + 1) % 3]], b = pts[tr.v[(k + 2) % 3]];
        if (orient(a, b, p) < 0.0 && orient(a, b, from) >= 0.0 && orient(from, p, a) * orient(from, p, b) <= 0.0)
          return {i, k};
      }
    }
    throw MeshFailure("point location failed");
  }

  bool in_circumcircle(int t, Vec2 p) const {
    const Tri& tr = tris[t];
    return incircle_det(pts[tr.v[0]], pts[tr.v[1]], pts[tr.v[2]], p) > 0.0;
  }

  // Triangles whose circumcircle contains p, grown from start without
  // crossing constrained edges.
  std::vector<int> cavity(Vec2 p, int start) {
    std::vector<int> cav{start};
    ++stamp_;
    mark(start);
    for (std::size_t k = 0; k < cav.size(); ++k) {
      const Tri& tr = tris[cav[k]];
      for (int i = 0; i < 3; ++i) {
        const int n = tr.nb[i];
        if (n < 0 || marked(n)) continue;
        if (is_constrained(tr.v[(i + 1) % 3], tr.v[(i + 2) % 3])) continue;
        if (in_circumcircle(n, p)) {
          mark(n);
          cav.push_back(n);
        }
      }
    }
    return cav;
  }

  struct CavityEdge {
    int a, b;   // counterclockwise as seen from inside the cavity
    int outer;  // triangle on the far side, or -1
  };

  std::vector<CavityEdge> cavity_boundary(const std::vector<int>& cav) {
    std::vector<CavityEdge> out;
    for (int t : cav) {
      const Tri& tr = tris[t];
      for (int i = 0; i < 3; ++i) {
        const int n = tr.nb[i];
        if (n >= 0 && marked(n)) continue;
        out.push_back({tr.v[(i + 1) % 3], tr.v[(i + 2) % 3], n});
      }
    }
    return out;
  }

  // Replaces the cavity by a fan around the new point p_index. Cavity
  // boundary edges collinear with p (the subsegment being split) are
  // skipped. Returns the new triangles.
  std::vector<int> fill_cavity(int p_index, const std::vector<int>& cav, const std::vector<CavityEdge>& edges,
                               std::uint64_t skip_key) {
    const Vec2 p = pts[p_index];
    std::vector<int> created;
    std::vector<std::pair<int, int>> by_start;  // (a, new tri)
    std::vector<std::pair<int, int>> by_end;    // (b, new tri)
    for (const CavityEdge& e : edges) {
      if (skip_key != 0 && edge_key(e.a, e.b) == skip_key) continue;
      if (!(orient(pts[e.a], pts[e.b], p) > 0.0)) throw MeshFailure("cavity is not star-shaped");
      const int t = new_tri({e.a, e.b, p_index}, {-1, -1, e.outer});
      if (e.outer >= 0) {
        Tri& o = tris[e.outer];
        const int idx = edge_index(o, e.a, e.b);
        o.nb[idx] = t;
      }
      auto it = segments.find(edge_key(e.a, e.b));
      if (it != segments.end()) it->second.tri = t;
      created.push_back(t);
      by_start.push_back({e.a, t});
      by_end.push_back({e.b, t});
    }
    for (int t : created) {
      Tri& tr = tris[t];
      const int a = tr.v[0], b = tr.v[1];
      // Opposite a: edge (b, p), shared with the triangle whose edge starts at b.
      for (auto [s, other] : by_start)
        if (s == b) tr.nb[0] = other;
      // Opposite b: edge (p, a), shared with the triangle whose edge ends at a.
      for (auto [e, other] : by_end)
        if (e == a) tr.nb[1] = other;
    }
    for (int t : cav) kill(t);
    if (!created.empty()) last_ = created.front();
    return created;
  }

  std::vector<int> insert(int p_index, int start) {
    const auto cav = cavity(pts[p_index], start);
    const auto edges = cavity_boundary(cav);
    return fill_cavity(p_index, cav, edges, 0);
  }

  // Inserts the midpoint of a constrained edge, replacing it by two
  // constrained halves with the same tag.
  std::pair<int, std::vector<int>> split_segment(int a, int b) {
    const std::uint64_t key = edge_key(a, b);
    auto it = segments.find(key);
    const Segment seg = it->second;
    const int m = add_point(0.5 * (pts[a] + pts[b]));
    const auto cav = cavity(pts[m], seg.tri);
    const auto edges = cavity_boundary(cav);
    segments.erase(key);
    segments[edge_key(a, m)] = {seg.tag, -1};
    segments[edge_key(m, b)] = {seg.tag, -1};
    auto created = fill_cavity(m, cav, edges, key);
    for (int t : created) {
      const Tri& tr = tris[t];
      for (int i = 0; i < 3; ++i) {
        auto s = segments.find(edge_key(tr.v[(i + 1) % 3], tr.v[(i + 2) % 3]));
        if (s != segments.end()) s->second.tri = t;
      }
    }
    return {m, std::move(created)};
  }

  int any_alive() const {
    if (last_ >= 0 && last_ < int(tris.size()) && tris[last_].alive) return last_;
    for (int i = 0; i < int(tris.size()); ++i)
      if (tris[i].alive) return i;
    throw MeshFailure("empty triangulation");
  }

  int last() const { return last_; }

 private:
  int new_tri(std::array<int, 3> v, std::array<int, 3> nb) {
    if (!free_.empty()) {
      const int t = free_.back();
      free_.pop_back();
      tris[t] = {v, nb, true};
      stamps_[t] = 0;
      return t;
    }
    tris.push_back({v, nb, true});
    stamps_.push_back(0);
    return int(tris.size()) - 1;
  }
  void kill(int t) {
    tris[t].alive = false;
    free_.push_back(t);
  }
  void mark(int t) {
    if (stamps_.size() < tris.size()) stamps_.resize(tris.size(), 0);
    stamps_[t] = stamp_;
  }
  bool marked(int t) const { return t < int(stamps_.size()) && stamps_[t] == stamp_; }

  std::vector<int> free_;
  std::vector<std::uint64_t> stamps_;
  std::uint64_t stamp_ = 0;
  int last_ = -1;
};

}  // namespace detail

// Delaunay refinement mesh of a convex polygon with constant target size
// h_target (optionally graded). Post conditions: minimum angle >=
// options.min_angle_deg and maximum edge <= max_edge_factor * h_target;
// MeshFailure otherwise.
inline TriMesh mesh_polygon(const ConvexPolygon& poly, double h_target, const MeshOptions& options = {}) {
  if (!(h_target > 0.0)) throw DomainError("mesh_polygon: h_target must be positive");
  using detail::DelaunayBuilder;
  const double grade_r2 = options.grading_radius * options.grading_radius;
  auto size_at = [&](Vec2 x) {
    for (const Vec2& g : options.graded_points)
      if (norm2(x - g) < grade_r2) return h_target * options.grading_factor;
    return h_target;
  };

  DelaunayBuilder dt;
  const auto [lo, hi] = poly.bounding_box();
  dt.init_super_triangle(lo, hi);

  // Boundary points, each polygon edge split uniformly.
  std::vector<int> seq;  // boundary point indices in order
  std::vector<int> seg_tag;
  std::unordered_map<std::string, int> tag_ids;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2 a = poly.edge_start(i), b = poly.edge_end(i);
    const double len = distance(a, b);
    double local = std::min({size_at(a), size_at(b), size_at(0.5 * (a + b))});
    for (const Vec2& g : options.graded_points) {
      const Vec2 e = b - a;
      const double s = std::clamp(dot(g - a, e) / norm2(e), 0.0, 1.0);
      local = std::min(local, size_at(a + s * e));
    }
    const int k = std::max(1, int(std::ceil(len / local - 1e-9)));
    const std::string tag = poly.tag(i).empty() ? std::string("boundary") : poly.tag(i);
    auto [it, inserted] = tag_ids.emplace(tag, int(dt.tag_names.size()));
    if (inserted) dt.tag_names.push_back(tag);
    for (int j = 0; j < k; ++j) {
      seq.push_back(dt.add_point(a + (double(j) / k) * (b - a)));
      seg_tag.push_back(it->second);
    }
  }

  // Interior lattice, kept at least half a local cell away from the
  // boundary. For a row y the points at distance >= d from every edge line
  // form an x-interval, which avoids a per-point distance query.
  auto row_interval = [&](double y, double d) {
    double xl = -std::numeric_limits<double>::max(), xr = std::numeric_limits<double>::max();
    for (std::size_t i = 0; i < poly.size(); ++i) {
      // inward distance to edge line i: dot(p - v_i, inward normal) >= d
      const Vec2 nin = -poly.outward_normal(i), v = poly.vertex(i);
      const double rest = d - nin.y * (y - v.y);  // need nin.x * (x - v.x) >= rest
      if (std::abs(nin.x) < 1e-15) {
        if (rest > 0.0) return std::pair{1.0, 0.0};
      } else if (nin.x > 0.0) {
        xl = std::max(xl, v.x + rest / nin.x);
      } else {
        xr = std::min(xr, v.x + rest / nin.x);
      }
    }
    return std::pair{xl, xr};
  };
  const double dy = h_target * std::sqrt(3.0) / 2.0;
  const double coarse_gap = 0.5 * h_target;
  const double fine_gap = options.graded_points.empty() ? coarse_gap : 0.5 * h_target * std::min(1.0, options.grading_factor);
  const long j0 = long(std::floor(lo.y / dy)) - 1, j1 = long(std::ceil(hi.y / dy)) + 1;
  for (long j = j0; j <= j1; ++j) {
    const double y = double(j) * dy;
    const auto [xl, xr] = row_interval(y, fine_gap);
    if (!(xl <= xr)) continue;
    const auto [cl, cr] = row_interval(y, coarse_gap);
    const double shift = (j & 1) ? 0.5 : 0.0;
    for (long i = long(std::ceil(xl / h_target - shift)); (double(i) + shift) * h_target <= xr; ++i) {
      const Vec2 p{(double(i) + shift) * h_target, y};
      if (p.x < xl) continue;
      if ((p.x >= cl && p.x <= cr) || size_at(p) < h_target) dt.add_point(p);
    }
  }
  if (dt.pts.size() > options.max_nodes) throw MeshFailure("mesh_polygon: node budget exceeded by seeding");

  // Insert in Hilbert order for short walks.
  {
    std::vector<int> order(dt.pts.size() - 3);
    std::iota(order.begin(), order.end(), 3);
    const double span = std::max(hi.x - lo.x, hi.y - lo.y);
    std::vector<std::uint64_t> hk(dt.pts.size());
    for (int idx : order) {
      const Vec2 q = (dt.pts[idx] - lo) / span;
      hk[idx] = detail::hilbert_index(std::uint32_t(std::clamp(q.x, 0.0, 1.0) * 65535.0),
                                      std::uint32_t(std::clamp(q.y, 0.0, 1.0) * 65535.0), 16);
    }
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return hk[a] < hk[b]; });
    for (int idx : order) {
      const auto loc = dt.locate(dt.pts[idx], dt.last());
      if (loc.exit_edge >= 0) throw MeshFailure("point outside the super triangle");
      dt.insert(idx, loc.tri);
    }
  }

  // Boundary recovery: subsegments missing from the triangulation are split
  // until every piece is a Delaunay edge.
  std::vector<std::pair<std::pair<int, int>, int>> pending;
  for (std::size_t k = 0; k < seq.size(); ++k)
    pending.push_back({{seq[k], seq[(k + 1) % seq.size()]}, seg_tag[k]});
  {
    std::unordered_map<std::uint64_t, int> edge_tri;
    auto rebuild = [&]() {
      edge_tri.clear();
      for (int t = 0; t < int(dt.tris.size()); ++t) {
        if (!dt.tris[t].alive) continue;
        const auto& v = dt.tris[t].v;
        for (int i = 0; i < 3; ++i) edge_tri[detail::edge_key(v[i], v[(i + 1) % 3])] = t;
      }
    };
    rebuild();
    std::vector<std::pair<std::pair<int, int>, int>> done;
    int guard = 0;
    while (!pending.empty()) {
      auto [ab, tag] = pending.back();
      pending.pop_back();
      if (edge_tri.count(detail::edge_key(ab.first, ab.second))) {
        done.push_back({ab, tag});
        continue;
      }
      if (++guard > 100000) throw MeshFailure("boundary recovery did not converge");
      const Vec2 mid = 0.5 * (dt.pts[ab.first] + dt.pts[ab.second]);
      const int m = dt.add_point(mid);
      const auto loc = dt.locate(mid, dt.last());
      dt.insert(m, loc.tri);
      rebuild();
      pending.push_back({{ab.first, m}, tag});
      pending.push_back({{m, ab.second}, tag});
    }
    for (auto& [ab, tag] : done) dt.segments[detail::edge_key(ab.first, ab.second)] = {tag, -1};
  }

  // Remove the exterior (triangles touching the super triangle) and cut
  // adjacency across constrained edges.
  for (int t = 0; t < int(dt.tris.size()); ++t) {
    auto& tr = dt.tris[t];
    if (!tr.alive) continue;
    if (tr.v[0] < 3 || tr.v[1] < 3 || tr.v[2] < 3) {
      tr.alive = false;
      continue;
    }
  }
  for (int t = 0; t < int(dt.tris.size()); ++t) {
    auto& tr = dt.tris[t];
    if (!tr.alive) continue;
    for (int i = 0; i < 3; ++i) {
      const int a = tr.v[(i + 1) % 3], b = tr.v[(i + 2) % 3];
      if (tr.nb[i] >= 0 && !dt.tris[tr.nb[i]].alive) tr.nb[i] = -1;
      if (dt.is_constrained(a, b)) {
        tr.nb[i] = -1;
        dt.segments[detail::edge_key(a, b)].tri = t;
      } else if (tr.nb[i] < 0) {
        throw MeshFailure("hull edge without boundary tag (input not convex?)");
      }
    }
  }
  // Dead triangles must not be reused by the free list of the builder; the
  // builder only recycles slots it killed itself, so rebuild a clean copy.
  {
    detail::DelaunayBuilder clean;
    clean.pts = dt.pts;
    clean.tag_names = dt.tag_names;
    std::vector<int> remap(dt.tris.size(), -1);
    for (int t = 0; t < int(dt.tris.size()); ++t)
      if (dt.tris[t].alive) {
        remap[t] = int(clean.tris.size());
        clean.tris.push_back(dt.tris[t]);
      }
    for (auto& tr : clean.tris)
      for (int& n : tr.nb) n = n >= 0 ? remap[n] : -1;
    for (auto& [k, s] : dt.segments) clean.segments[k] = {s.tag, remap[s.tri]};
    dt = std::move(clean);
  }

  // Refinement.
  const double sin_min = std::sin(options.min_angle_deg * kPi / 180.0);
  const double size_limit = 0.95 * options.max_edge_factor;
  enum class Verdict { good, bad };
  auto assess = [&](int t) {
    const auto& v = dt.tris[t].v;
    const Vec2 a = dt.pts[v[0]], b = dt.pts[v[1]], c = dt.pts[v[2]];
    const double la = norm2(b - c), lb = norm2(c - a), lc = norm2(a - b);
    const double lmax = std::max({la, lb, lc});
    const double area2 = orient(a, b, c);
    // Smallest angle is opposite the shortest edge: sin = 2A / (product of the other two).
    const double lmin = std::min({la, lb, lc});
    const double s = area2 / std::sqrt(la * lb * lc / lmin);
    const double local = size_at((a + b + c) / 3.0);
    if (s < sin_min || std::sqrt(lmax) > size_limit * local) return Verdict::bad;
    return Verdict::good;
  };

  std::deque<std::pair<int, std::array<int, 3>>> queue;
  for (int t = 0; t < int(dt.tris.size()); ++t) queue.push_back({t, dt.tris[t].v});
  auto enqueue = [&](const std::vector<int>& ts) {
    for (int t : ts) queue.push_back({t, dt.tris[t].v});
  };
  const double min_seg = 1e-6 * h_target;
  while (!queue.empty()) {
    auto [t, verts] = queue.front();
    queue.pop_front();
    if (!dt.tris[t].alive || dt.tris[t].v != verts) continue;
    if (assess(t) == Verdict::good) continue;
    if (dt.pts.size() > options.max_nodes) throw MeshFailure("mesh_polygon: node budget exceeded");
    const auto& v = dt.tris[t].v;
    const Vec2 c = detail::circumcenter(dt.pts[v[0]], dt.pts[v[1]], dt.pts[v[2]]);
    const auto loc = dt.locate(c, t);
    std::vector<std::pair<int, int>> encroached;
    std::vector<int> cav;
    if (loc.exit_edge >= 0) {
      const auto& tr = dt.tris[loc.tri];
      encroached.push_back({tr.v[(loc.exit_edge + 1) % 3], tr.v[(loc.exit_edge + 2) % 3]});
    } else {
      cav = dt.cavity(c, loc.tri);
      for (int ct : cav) {
        const auto& tr = dt.tris[ct];
        for (int i = 0; i < 3; ++i) {
          const int a = tr.v[(i + 1) % 3], b = tr.v[(i + 2) % 3];
          if (!dt.is_constrained(a, b)) continue;
          if (dot(dt.pts[a] - c, dt.pts[b] - c) < 0.0) encroached.push_back({a, b});
        }
      }
    }
    if (!encroached.empty()) {
      bool split_any = false;
      for (auto [a, b] : encroached) {
        if (!dt.is_constrained(a, b) || distance(dt.pts[a], dt.pts[b]) < min_seg) continue;
        auto [m, created] = dt.split_segment(a, b);
        enqueue(created);
        split_any = true;
      }
      if (split_any && dt.tris[t].alive && dt.tris[t].v == verts) queue.push_back({t, verts});
      continue;
    }
    const int p = dt.add_point(c);
    const auto edges = dt.cavity_boundary(cav);
    enqueue(dt.fill_cavity(p, cav, edges, 0));
  }

  // Export with the super-triangle vertices dropped.
  TriMesh mesh;
  mesh.h_target = h_target;
  std::vector<int> node_map(dt.pts.size(), -1);
  for (const auto& tr : dt.tris) {
    if (!tr.alive) continue;
    std::array<int, 3> out{};
    for (int i = 0; i < 3; ++i) {
      int& m = node_map[tr.v[i]];
      if (m < 0) {
        m = int(mesh.nodes.size());
        mesh.nodes.push_back(dt.pts[tr.v[i]]);
      }
      out[i] = m;
    }
    mesh.triangles.push_back(out);
  }
  for (const auto& tr : dt.tris) {
    if (!tr.alive) continue;
    for (int i = 0; i < 3; ++i) {
      const int a = tr.v[(i + 1) % 3], b = tr.v[(i + 2) % 3];
      auto it = dt.segments.find(detail::edge_key(a, b));
      if (it != dt.segments.end()) mesh.boundary_edges.push_back({node_map[a], node_map[b], dt.tag_names[it->second.tag]});
    }
  }
  // Deterministic boundary order: walk the loop starting at the first polygon vertex.
  {
    std::unordered_map<int, std::size_t> from;
    for (std::size_t k = 0; k < mesh.boundary_edges.size(); ++k) from[mesh.boundary_edges[k].a] = k;
    std::vector<BoundaryEdge> ordered;
    int start = node_map[seq.front()];
    int cur = start;
    for (std::size_t k = 0; k < mesh.boundary_edges.size(); ++k) {
      auto it = from.find(cur);
      if (it == from.end()) throw MeshFailure("boundary loop is broken");
      ordered.push_back(mesh.boundary_edges[it->second]);
      cur = ordered.back().b;
      if (cur == start) break;
    }
    if (ordered.size() != mesh.boundary_edges.size()) throw MeshFailure("boundary is not a single loop");
    mesh.boundary_edges = std::move(ordered);
  }
  validate_mesh(mesh);
  const MeshQuality q = mesh_quality(mesh);
  if (q.min_angle_deg < options.min_angle_deg - 1e-6)
    throw MeshFailure("minimum angle target unreachable: " + std::to_string(q.min_angle_deg) + " deg");
  if (q.max_edge > options.max_edge_factor * h_target * (1.0 + 1e-9))
    throw MeshFailure("maximum edge target unreachable: " + std::to_string(q.max_edge));
  return mesh;
}

// Uniform subdivision of a triangle into n^2 congruent copies (all similar
// to the input). Edge tags are inherited. Node positions depend smoothly on
// the triangle vertices with fixed connectivity, which makes it the mesh of
// choice for parameter scans.
inline TriMesh mesh_triangle_uniform(const ConvexPolygon& tri, int n) {
  if (tri.size() != 3) throw DomainError("mesh_triangle_uniform: polygon must be a triangle");
  if (n < 1) throw DomainError("mesh_triangle_uniform: n must be positive");
  const Vec2 p0 = tri.vertex(0), e1 = tri.vertex(1) - p0, e2 = tri.vertex(2) - p0;
  TriMesh mesh;
  mesh.h_target = std::max({norm(e1), norm(e2), distance(tri.vertex(1), tri.vertex(2))}) / n;
  auto id = [n](int i, int j) { return j * (n + 1) - j * (j - 1) / 2 + i; };
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i + j <= n; ++i) mesh.nodes.push_back(p0 + (double(i) / n) * e1 + (double(j) / n) * e2);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i + j < n; ++i) {
      mesh.triangles.push_back({id(i, j), id(i + 1, j), id(i, j + 1)});
      if (i + j + 1 < n) mesh.triangles.push_back({id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  auto tag = [&](int k) { return tri.tag(k).empty() ? std::string("boundary") : tri.tag(k); };
  for (int i = 0; i < n; ++i) mesh.boundary_edges.push_back({id(i, 0), id(i + 1, 0), tag(0)});
  for (int k = 0; k < n; ++k) mesh.boundary_edges.push_back({id(n - k, k), id(n - k - 1, k + 1), tag(1)});
  for (int k = 0; k < n; ++k) mesh.boundary_edges.push_back({id(0, n - k), id(0, n - k - 1), tag(2)});
  validate_mesh(mesh);
  return mesh;
}

// Same connectivity, nodes moved by map. Throws if an element inverts.
inline TriMesh morph_mesh(const TriMesh& mesh, const std::function<Vec2(Vec2)>& map) {
  TriMesh out = mesh;
  for (Vec2& p : out.nodes) p = map(p);
  for (std::size_t t = 0; t < out.num_triangles(); ++t)
    if (!(out.triangle_area(t) > 0.0)) throw MeshFailure("morph_mesh: element inverted");
  return out;
}

// Point location by a uniform bucket grid over triangle bounding boxes.
class PointLocator {
 public:
  explicit PointLocator(const TriMesh& mesh) : mesh_(&mesh) {
    lo_ = {std::numeric_limits<double>::max(), std::numeric_limits<double>::max()};
    Vec2 hi = -lo_;
    for (const Vec2& p : mesh.nodes) {
      lo_ = {std::min(lo_.x, p.x), std::min(lo_.y, p.y)};
      hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
    }
    const int cells = std::max(1, int(std::sqrt(double(mesh.num_triangles()) / 2.0)));
    nx_ = ny_ = cells;
    cell_ = {std::max((hi.x - lo_.x) / nx_, 1e-300), std::max((hi.y - lo_.y) / ny_, 1e-300)};
    buckets_.assign(std::size_t(nx_) * ny_, {});
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
      const auto& v = mesh.triangles[t];
      Vec2 a = mesh.nodes[v[0]], b = a;
      for (int i = 1; i < 3; ++i) {
        a = {std::min(a.x, mesh.nodes[v[i]].x), std::min(a.y, mesh.nodes[v[i]].y)};
        b = {std::max(b.x, mesh.nodes[v[i]].x), std::max(b.y, mesh.nodes[v[i]].y)};
      }
      const auto [ia, ja] = cell_of(a);
      const auto [ib, jb] = cell_of(b);
      for (int j = ja; j <= jb; ++j)
        for (int i = ia; i <= ib; ++i) buckets_[std::size_t(j) * nx_ + i].push_back(int(t));
    }
  }

  struct Hit {
    int tri;                      // -1 when outside the mesh
    std::array<double, 3> bary;   // barycentric coordinates
  };

  Hit locate(Vec2 p, double tol = 1e-10) const {
    const auto [i, j] = cell_of(p);
    Hit best{-1, {0, 0, 0}};
    double best_min = -std::numeric_limits<double>::max();
    for (int t : buckets_[std::size_t(j) * nx_ + i]) {
      const auto& v = mesh_->triangles[t];
      const Vec2 a = mesh_->nodes[v[0]], b = mesh_->nodes[v[1]], c = mesh_->nodes[v[2]];
      const double area = orient(a, b, c);
      const std::array<double, 3> l{orient(p, b, c) / area, orient(a, p, c) / area, orient(a, b, p) / area};
      const double m = std::min({l[0], l[1], l[2]});
      if (m > best_min) {
        best_min = m;
        best = {t, l};
      }
    }
    if (best_min < -tol) return {-1, {0, 0, 0}};
    return best;
  }

  // Linear interpolation of nodal values; throws outside the mesh.
  double interpolate(const std::vector<double>& values, Vec2 p) const {
    const Hit h = locate(p);
    if (h.tri < 0) throw DomainError("interpolate: point outside the mesh");
    const auto& v = mesh_->triangles[h.tri];
    return h.bary[0] * values[v[0]] + h.bary[1] * values[v[1]] + h.bary[2] * values[v[2]];
  }

 private:
  std::pair<int, int> cell_of(Vec2 p) const {
    const int i = std::clamp(int((p.x - lo_.x) / cell_.x), 0, nx_ - 1);
    const int j = std::clamp(int((p.y - lo_.y) / cell_.y), 0, ny_ - 1);
    return {i, j};
  }

  const TriMesh* mesh_;
  Vec2 lo_, cell_;
  int nx_ = 1, ny_ = 1;
  std::vector<std::vector<int>> buckets_;
};

}  // namespace minwidth

#endif  // MINWIDTH_MESH_HPP
