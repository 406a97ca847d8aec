#ifndef MINWIDTH_SHAPE_ANALYSIS_HPP
#define MINWIDTH_SHAPE_ANALYSIS_HPP

// Torsion experiments on three-cap sets, hexagons and their slices: the
// vertex-rotation shape derivative, trace comparison between cap arcs, the
// fixed-inradius landscape, the hexagon scan and slice flux symmetry.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "minwidth/errors.hpp"
#include "minwidth/fem.hpp"
#include "minwidth/geometry.hpp"
#include "minwidth/mesh.hpp"

namespace minwidth {

struct ComparisonRow {
  double parameter;
  double lhs;
  double rhs;
  double difference;  // lhs - rhs
  double error;       // estimated discretization error of the difference (0 if unknown)
};

struct ComparisonTable {
  std::string proposition;
  std::string parameter_name;
  std::vector<ComparisonRow> rows;

  void add(double parameter, double lhs, double rhs, double error = 0.0) {
    if (!rows.empty() && !(parameter > rows.back().parameter))
      throw DomainError("ComparisonTable: parameters must be strictly increasing");
    rows.push_back({parameter, lhs, rhs, lhs - rhs, error});
  }
};

// ---------------------------------------------------------------------------
// Vertex rotation.

inline int cap_index(char label) {
  if (label < 'A' || label > 'C') throw DomainError(std::string("unknown cap label '") + label + "'");
  return label - 'A';
}

inline ThreeCapParams with_vertex_angle(ThreeCapParams p, char label, double phi) {
  switch (cap_index(label)) {
    case 0: p.phi_A = phi; break;
    case 1: p.phi_B = phi; break;
    default: p.phi_C = phi; break;
  }
  return p;
}

inline double vertex_angle(const ThreeCapParams& p, char label) {
  const int k = cap_index(label);
  return k == 0 ? p.phi_A : k == 1 ? p.phi_B : p.phi_C;
}

// +1 if `to` is the counterclockwise neighbour of `from`, -1 otherwise:
// the sign of d(phi_from) that moves `from` towards `to`.
inline int direction_towards(const ThreeCapLayout& L, char from, char to) {
  const int f = cap_index(from), t = cap_index(to);
  if (f == t) throw DomainError("direction_towards: identical vertices");
  for (int k = 0; k < 3; ++k)
    if (L.ccw_order[k] == f) return L.ccw_order[(k + 1) % 3] == t ? 1 : -1;
  return 0;
}

// Angular displacement field for rotating cap `label` by eps: the cap
// sector turns rigidly, the two adjacent free arcs stretch linearly (so
// chord vertices land on the chord vertices of the rotated polygon), all
// other sectors stay fixed. Points move along circles about the center.
inline double cap_rotation_shift(const ThreeCapLayout& L, char label, double eps, double theta) {
  const int k = cap_index(label);
  int pos = 0;
  while (L.ccw_order[pos] != k) ++pos;
  const double g_next = L.gaps[pos], g_prev = L.gaps[(pos + 2) % 3];
  const double phi = L.caps[k].phi, a = L.alpha;
  double d = std::fmod(theta - phi, kTwoPi);
  if (d < 0.0) d += kTwoPi;
  if (d <= a) return eps;
  if (d <= g_next - a) return eps * (g_next - a - d) / (g_next - 2.0 * a);
  const double e = kTwoPi - d;
  if (e <= a) return eps;
  if (e <= g_prev - a) return eps * (g_prev - a - e) / (g_prev - 2.0 * a);
  return 0.0;
}

inline TriMesh rotate_cap_mesh(const TriMesh& mesh, const ThreeCapLayout& L, char label, double eps) {
  return morph_mesh(mesh, [&](Vec2 x) {
    if (norm2(x) == 0.0) return x;
    return rotate(x, cap_rotation_shift(L, label, eps, std::atan2(x.y, x.x)));
  });
}

struct VertexDerivative {
  char vertex;
  double T;                 // torsion of the base configuration
  double flux_T_side;       // integral over XT of |x - T| (d_n u)^2
  double flux_S_side;       // integral over XS of |x - S| (d_n u)^2
  double dT_dphi_flux;      // flux_T_side - flux_S_side
  double dT_dphi_fd;        // central difference with step
  double dT_dphi_fd_2step;  // central difference with 2 * step
  double dT_dphi_richardson;
  double step;
  std::size_t mesh_nodes;

  double relative_disagreement() const { return std::abs(dT_dphi_flux - dT_dphi_fd) / std::abs(dT_dphi_fd); }
};

struct DerivativeOptions {
  double grading_factor = 0.5;
  double grading_radius = 0.1;
  bool graded = true;
};

// Integral of weight(x) * q(x)^2 along the boundary edges carrying `tag`,
// two Gauss points per edge with q linear along the edge.
template <typename Weight>
double flux_square_integral(const TriMesh& mesh, const BoundaryFlux& flux, const std::string& tag, Weight weight) {
  const double g = 0.5 / std::sqrt(3.0);
  double s = 0.0;
  for (std::size_t k = 0; k < flux.edges.size(); ++k) {
    const EdgeFlux& e = flux.edges[k];
    if (e.tag != tag) continue;
    const Vec2 a = mesh.nodes[e.a], b = mesh.nodes[e.b];
    for (double t : {0.5 - g, 0.5 + g}) {
      const double q = flux.at(k, t);
      s += 0.5 * e.length * weight(a + t * (b - a)) * q * q;
    }
  }
  return s;
}

// Derivative of the torsion with respect to the direction angle of one cap
// vertex (counterclockwise rotation about the disk center, i.e. from S
// towards T). The flux value integrates the boundary formula on the two
// tangent segments. The finite-difference value re-solves on the same mesh
// morphed onto the rotated configurations, which are exactly the polygons
// build_three_cap would produce.
inline VertexDerivative vertex_shape_derivative(const ThreeCapParams& params, char vertex, double h_mesh,
                                                double fd_step, const DerivativeOptions& opt = {}) {
  if (!(fd_step > 0.0)) throw DomainError("vertex_shape_derivative: fd_step must be positive");
  const ThreeCapLayout L = three_cap_layout(params);
  const double phi = vertex_angle(params, vertex);
  for (double s : {-2.0, 2.0}) three_cap_layout(with_vertex_angle(params, vertex, phi + s * fd_step));
  const CapVertex& cap = L.caps[cap_index(vertex)];

  MeshOptions mo;
  if (opt.graded) {
    mo.graded_points = {cap.apex, cap.S, cap.T};
    mo.grading_factor = opt.grading_factor;
    mo.grading_radius = opt.grading_radius;
  }
  const TriMesh mesh = mesh_polygon(build_three_cap(params), h_mesh, mo);
  const TorsionResult base = solve_torsion(mesh);
  const BoundaryFlux flux = boundary_flux(mesh, base.u, 1.0);
  const std::string x(1, vertex);
  VertexDerivative d{};
  d.vertex = vertex;
  d.T = base.T;
  d.step = fd_step;
  d.mesh_nodes = mesh.num_nodes();
  d.flux_T_side = flux_square_integral(mesh, flux, "segment:" + x + "T", [&](Vec2 p) { return distance(p, cap.T); });
  d.flux_S_side = flux_square_integral(mesh, flux, "segment:" + x + "S", [&](Vec2 p) { return distance(p, cap.S); });
  d.dT_dphi_flux = d.flux_T_side - d.flux_S_side;

  auto torsion_at = [&](double eps) { return solve_torsion(rotate_cap_mesh(mesh, L, vertex, eps)).T; };
  const double p1 = torsion_at(fd_step), m1 = torsion_at(-fd_step);
  const double p2 = torsion_at(2 * fd_step), m2 = torsion_at(-2 * fd_step);
  d.dT_dphi_fd = (p1 - m1) / (2 * fd_step);
  d.dT_dphi_fd_2step = (p2 - m2) / (4 * fd_step);
  d.dT_dphi_richardson = (4 * d.dT_dphi_fd - d.dT_dphi_fd_2step) / 3;
  return d;
}

// ---------------------------------------------------------------------------
// Trace comparison between the hidden arcs of caps B and C.

// Rotates A onto the positive axis and, if needed, reflects so that B is
// the counterclockwise neighbour of A. Throws if then AB > AC (the
// symmetric case AB = AC is accepted).
inline ThreeCapParams normalize_AB_less_AC(const ThreeCapParams& p) {
  ThreeCapParams q = p;
  q.phi_A = 0.0;
  q.phi_B = wrap_angle(p.phi_B - p.phi_A);
  q.phi_C = wrap_angle(p.phi_C - p.phi_A);
  if (q.phi_B > q.phi_C) {
    q.phi_B = wrap_angle(-q.phi_B);
    q.phi_C = wrap_angle(-q.phi_C);
  }
  three_cap_layout(q);
  const double ab = q.phi_B, ac = kTwoPi - q.phi_C;
  if (ab > ac + 1e-12) throw DomainError("trace_compare_BC: configuration does not satisfy AB <= AC");
  return q;
}

struct TraceComparison {
  ComparisonTable table;       // values on the finer mesh, error per row
  double eps_disc;             // 2 * max |difference(h) - difference(h/2)|
  ThreeCapParams normalized;
};

// u(gamma_B(t)) against u(gamma_C(2 alpha - t)) at `samples` uniform t in
// [0, 2 alpha], with gamma_X(t) = r e^{i(phi_X - alpha + t)} the arc hidden
// by cap X. Solved on meshes of size h and h/2.
inline TraceComparison trace_compare_BC(const ThreeCapParams& params, int samples, double h_mesh = 0.005) {
  if (samples < 2) throw DomainError("trace_compare_BC: need at least two samples");
  TraceComparison out;
  out.normalized = normalize_AB_less_AC(params);
  const ThreeCapLayout L = three_cap_layout(out.normalized);
  const ConvexPolygon poly = build_three_cap(out.normalized);
  const double a = L.alpha, r = L.r;
  auto differences = [&](double h, std::vector<double>& lhs, std::vector<double>& rhs) {
    const TriMesh mesh = mesh_polygon(poly, h);
    const TorsionResult sol = solve_torsion(mesh);
    const PointLocator loc(mesh);
    auto u_at = [&](Vec2 p) {
      const auto hit = loc.locate(p, 1e-9);
      if (hit.tri < 0) return 0.0;  // tangency points sit on the boundary
      const auto& v = mesh.triangles[hit.tri];
      return std::max(0.0, hit.bary[0]) * sol.u.values[v[0]] + std::max(0.0, hit.bary[1]) * sol.u.values[v[1]] +
             std::max(0.0, hit.bary[2]) * sol.u.values[v[2]];
    };
    lhs.clear();
    rhs.clear();
    for (int k = 0; k < samples; ++k) {
      const double t = 2 * a * k / (samples - 1);
      lhs.push_back(u_at(polar(r, L.caps[1].phi - a + t)));
      rhs.push_back(u_at(polar(r, L.caps[2].phi - a + (2 * a - t))));
    }
  };
  std::vector<double> l1, r1, l2, r2;
  differences(h_mesh, l1, r1);
  differences(0.5 * h_mesh, l2, r2);
  out.table.proposition = "u(gamma_B(t)) >= u(gamma_C(2 alpha - t)) when AB < AC";
  out.table.parameter_name = "t";
  out.eps_disc = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double err = 2.0 * std::abs((l1[k] - r1[k]) - (l2[k] - r2[k]));
    out.eps_disc = std::max(out.eps_disc, err);
    out.table.add(2 * a * k / (samples - 1), l2[k], r2[k], err);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fixed-inradius landscape.

struct LandscapeRow {
  double phi_B;
  double phi_C;
  double T;        // at h_mesh
  double T_fine;   // at h_mesh / 2 (NaN when not requested)
};

struct Landscape {
  double r;
  double grid_step;
  std::vector<LandscapeRow> rows;   // admissible grid points, (phi_B, phi_C) lexicographic
  std::size_t skipped = 0;          // inadmissible grid points
  std::size_t argmin = 0;           // index into rows (by T_fine when available)
  std::size_t equilateral = std::numeric_limits<std::size_t>::max();  // index of (2pi/3, 4pi/3) if on grid
};

// Torsion of every admissible configuration phi_A = 0 < phi_B < phi_C < 2 pi
// on a grid of the given angular step. With refine = true each
// configuration is also solved at h_mesh / 2.
inline Landscape fixed_inradius_landscape(double r, double grid_step, double h_mesh, bool refine = false,
                                          int n_arc = 256) {
  if (!(r > 1.0 / 3.0 && r < 0.5)) throw DomainError("fixed_inradius_landscape: r must lie in (1/3, 1/2)");
  if (!(grid_step > 0.0)) throw DomainError("fixed_inradius_landscape: grid_step must be positive");
  Landscape out;
  out.r = r;
  out.grid_step = grid_step;
  const int n = int(std::llround(kTwoPi / grid_step));
  const double two_alpha = 2.0 * cap_half_angle(r);
  double best = std::numeric_limits<double>::max();
  for (int i = 1; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double pb = i * grid_step, pc = j * grid_step;
      if (pb < two_alpha - 1e-12 || pc - pb < two_alpha - 1e-12 || kTwoPi - pc < two_alpha - 1e-12) {
        ++out.skipped;
        continue;
      }
      const ConvexPolygon poly = build_three_cap({r, 0.0, pb, pc, n_arc});
      LandscapeRow row{pb, pc, solve_torsion(mesh_polygon(poly, h_mesh)).T, std::nan("")};
      if (refine) row.T_fine = solve_torsion(mesh_polygon(poly, 0.5 * h_mesh)).T;
      const double key = refine ? row.T_fine : row.T;
      if (key < best) {
        best = key;
        out.argmin = out.rows.size();
      }
      if (std::abs(pb - kTwoPi / 3) < 1e-9 && std::abs(pc - 2 * kTwoPi / 3) < 1e-9) out.equilateral = out.rows.size();
      out.rows.push_back(row);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Hexagon and slice.

struct HexagonRow {
  double r;
  double T;          // hexagon, Delaunay mesh of size h
  double T_fine;     // same at h / 2
  double error;      // |T - T_fine|
  double slice6;     // 6 x mixed slice energy, uniform slice mesh of size about h / 2
};

inline int uniform_divisions(const ConvexPolygon& tri, double h) {
  double longest = 0.0;
  for (std::size_t i = 0; i < 3; ++i) longest = std::max(longest, norm(tri.edge_vector(i)));
  return std::max(1, int(std::ceil(longest / h - 1e-9)));
}

inline std::vector<HexagonRow> hexagon_scan(const std::vector<double>& r_grid, double h_mesh) {
  std::vector<HexagonRow> rows;
  for (double r : r_grid) {
    check_inradius(r, "hexagon_scan");
    const ConvexPolygon hex = build_hexagon(r);
    HexagonRow row{r, solve_torsion(mesh_polygon(hex, h_mesh)).T, solve_torsion(mesh_polygon(hex, 0.5 * h_mesh)).T,
                   0.0, 0.0};
    row.error = std::abs(row.T - row.T_fine);
    const ConvexPolygon slice = build_slice_triangle(r);
    row.slice6 = 6.0 * solve_mixed(mesh_triangle_uniform(slice, uniform_divisions(slice, 0.5 * h_mesh))).energy;
    rows.push_back(row);
  }
  return rows;
}

// Recovered normal derivative of the slice solution along YZ, sampled by
// the fraction s in [0,1] from Y to Z.
class SliceFlux {
 public:
  SliceFlux(double r, double h_mesh) : slice_(build_slice_triangle(r)) {
    mesh_ = mesh_polygon(slice_, h_mesh);
    const MixedResult m = solve_mixed(mesh_);
    flux_ = boundary_flux(mesh_, m.w, 1.0, {"neumann"});
  }

  double at(double s) const {
    const Vec2 y = slice_.vertex(1), z = slice_.vertex(2);
    const Vec2 p = y + s * (z - y);
    double best = std::numeric_limits<double>::max(), value = 0.0;
    for (std::size_t k = 0; k < flux_.edges.size(); ++k) {
      const EdgeFlux& e = flux_.edges[k];
      if (e.tag != "dirichlet") continue;
      const Vec2 a = mesh_.nodes[e.a], b = mesh_.nodes[e.b];
      const double t = std::clamp(dot(p - a, b - a) / norm2(b - a), 0.0, 1.0);
      const double d = distance(a + t * (b - a), p);
      if (d < best) {
        best = d;
        value = flux_.at(k, t);
      }
    }
    return value;
  }

 private:
  ConvexPolygon slice_;
  TriMesh mesh_;
  BoundaryFlux flux_;
};

// Pairs U = M + s (Y - M), V = M + s (Z - M) about the midpoint M of YZ,
// s = k / samples for k = 1..samples; lhs = (d_n w)^2(U), rhs = (d_n w)^2(V).
// Errors come from the h versus h/2 comparison (factor 2), floored at the
// linear-solver tolerance relative to the larger square.
inline ComparisonTable slice_flux_symmetry(double r, int samples, double h_mesh) {
  check_inradius(r, "slice_flux_symmetry");
  if (samples < 1) throw DomainError("slice_flux_symmetry: samples must be positive");
  const SliceFlux coarse(r, h_mesh), fine(r, 0.5 * h_mesh);
  ComparisonTable t;
  t.proposition = "(d_n w)^2(U) > (d_n w)^2(V) for U on MY, V on MZ symmetric about M";
  t.parameter_name = "s";
  for (int k = 1; k <= samples; ++k) {
    const double s = double(k) / samples;
    // Fractions along YZ measured from Y.
    const double fu = 0.5 - 0.5 * s, fv = 0.5 + 0.5 * s;
    auto diff = [&](const SliceFlux& f) {
      const double qu = f.at(fu), qv = f.at(fv);
      return std::array<double, 3>{qu * qu, qv * qv, qu * qu - qv * qv};
    };
    const auto c = diff(coarse), f = diff(fine);
    const double floor = 1e-10 * std::max(f[0], f[1]);
    t.add(s, f[0], f[1], std::max(2.0 * std::abs(c[2] - f[2]), floor));
  }
  return t;
}

// ---------------------------------------------------------------------------
// Area of three-cap sets.

struct PalRow {
  double r;
  double f;
  double fprime;
};

inline std::vector<PalRow> pal_area_scan(const std::vector<double>& r_grid) {
  std::vector<PalRow> rows;
  for (double r : r_grid) {
    const CapArea a = cap_area_f(r);
    rows.push_back({r, a.f, a.fprime});
  }
  return rows;
}

}  // namespace minwidth

#endif  // MINWIDTH_SHAPE_ANALYSIS_HPP
