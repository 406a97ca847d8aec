#ifndef MINWIDTH_FEM_HPP
#define MINWIDTH_FEM_HPP

// Piecewise-linear finite elements for -Δu = f (f constant) on a TriMesh
// with Dirichlet data on tagged boundary parts and natural (zero flux)
// conditions on the rest.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include "minwidth/errors.hpp"
#include "minwidth/mesh.hpp"
#include "minwidth/sparse.hpp"

namespace minwidth {

// Nodal values of a P1 function. The mesh is referenced, not owned.
struct ScalarField {
  const TriMesh* mesh = nullptr;
  std::vector<double> values;

  double operator[](std::size_t i) const { return values[i]; }
  std::size_t size() const { return values.size(); }
};

struct SolveInfo {
  int iterations = 0;
  double relative_residual = 0.0;
  std::size_t unknowns = 0;
};

struct TorsionResult {
  ScalarField u;
  double T;            // load form: integral of u
  double T_stiffness;  // stiffness form: integral of |grad u|^2
  SolveInfo info;
};

struct MixedResult {
  ScalarField w;
  double energy;  // integral of |grad w|^2
  double load;    // source times integral of w
  SolveInfo info;
};

namespace detail {

// Gradients of the three hat functions on triangle t (constant per element).
inline std::array<Vec2, 3> hat_gradients(const TriMesh& mesh, std::size_t t, double* area = nullptr) {
  const auto& v = mesh.triangles[t];
  const Vec2 p0 = mesh.nodes[v[0]], p1 = mesh.nodes[v[1]], p2 = mesh.nodes[v[2]];
  const double a2 = orient(p0, p1, p2);
  if (area) *area = 0.5 * a2;
  // grad phi_i = perp(opposite edge, rotated inward) / (2A)
  return {Vec2{p1.y - p2.y, p2.x - p1.x} / a2, Vec2{p2.y - p0.y, p0.x - p2.x} / a2,
          Vec2{p0.y - p1.y, p1.x - p0.x} / a2};
}

struct Assembled {
  CsrMatrix K;
  std::vector<double> F;  // load for unit source
};

inline Assembled assemble(const TriMesh& mesh) {
  const int n = int(mesh.num_nodes());
  std::vector<Triplet> entries;
  entries.reserve(9 * mesh.num_triangles());
  Assembled out;
  out.F.assign(n, 0.0);
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    double area = 0.0;
    const auto g = hat_gradients(mesh, t, &area);
    const auto& v = mesh.triangles[t];
    for (int i = 0; i < 3; ++i) {
      out.F[v[i]] += area / 3.0;
      for (int j = 0; j < 3; ++j) entries.push_back({v[i], v[j], area * dot(g[i], g[j])});
    }
  }
  out.K = csr_from_triplets(n, std::move(entries));
  return out;
}

// Solves K u = source * F with u fixed on nodes where fixed[i] != 0.
inline SolveInfo solve_constrained(const Assembled& sys, double source, const std::vector<char>& fixed,
                                   std::vector<double>& u, double rel_tol = 1e-10) {
  const int n = sys.K.n;
  std::vector<int> index(n, -1);
  int m = 0;
  for (int i = 0; i < n; ++i)
    if (!fixed[i]) index[i] = m++;
  std::vector<double> rhs(m, 0.0);
  std::vector<Triplet> entries;
  entries.reserve(sys.K.val.size());
  for (int i = 0; i < n; ++i) {
    if (index[i] < 0) continue;
    rhs[index[i]] = source * sys.F[i];
    for (int k = sys.K.row_ptr[i]; k < sys.K.row_ptr[i + 1]; ++k) {
      const int j = sys.K.col[k];
      if (index[j] >= 0)
        entries.push_back({index[i], index[j], sys.K.val[k]});
      else
        rhs[index[i]] -= sys.K.val[k] * u[j];  // Dirichlet lifting
    }
  }
  const CsrMatrix a = csr_from_triplets(m, std::move(entries));
  std::vector<double> x(m, 0.0);
  const CgResult cg = conjugate_gradient(a, rhs, x, rel_tol);
  for (int i = 0; i < n; ++i)
    if (index[i] >= 0) u[i] = x[index[i]];
  return {cg.iterations, cg.relative_residual, std::size_t(m)};
}

inline double quadratic_form(const CsrMatrix& k, const std::vector<double>& u) {
  std::vector<double> ku;
  k.multiply(u, ku);
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * ku[i];
  return s;
}

inline double inner(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace detail

// Torsion function: -Δu = 1 in the mesh domain, u = 0 on the whole boundary.
inline TorsionResult solve_torsion(const TriMesh& mesh) {
  const auto sys = detail::assemble(mesh);
  std::vector<char> fixed(mesh.num_nodes(), 0);
  for (const auto& e : mesh.boundary_edges) fixed[e.a] = fixed[e.b] = 1;
  TorsionResult r;
  r.u.mesh = &mesh;
  r.u.values.assign(mesh.num_nodes(), 0.0);
  r.info = detail::solve_constrained(sys, 1.0, fixed, r.u.values);
  r.T = detail::inner(sys.F, r.u.values);
  r.T_stiffness = detail::quadratic_form(sys.K, r.u.values);
  return r;
}

// -Δw = source with w = 0 on edges tagged "dirichlet" and zero normal
// derivative on every other edge.
inline MixedResult solve_mixed(const TriMesh& mesh, double source = 1.0,
                               const std::string& dirichlet_tag = "dirichlet") {
  std::vector<char> fixed(mesh.num_nodes(), 0);
  bool any = false;
  for (const auto& e : mesh.boundary_edges)
    if (e.tag == dirichlet_tag) {
      fixed[e.a] = fixed[e.b] = 1;
      any = true;
    }
  if (!any) throw NoDirichlet("solve_mixed: no boundary edge tagged '" + dirichlet_tag + "'");
  const auto sys = detail::assemble(mesh);
  MixedResult r;
  r.w.mesh = &mesh;
  r.w.values.assign(mesh.num_nodes(), 0.0);
  r.info = detail::solve_constrained(sys, source, fixed, r.w.values);
  r.energy = detail::quadratic_form(sys.K, r.w.values);
  r.load = source * detail::inner(sys.F, r.w.values);
  return r;
}

// Boundary data g(tag, s, x): tag of the boundary edge leaving the node, s
// the arclength along the boundary loop measured from the first boundary
// edge's start, x the node position.
using BoundaryData = std::function<double(const std::string& tag, double arclength, Vec2 x)>;

// Discrete harmonic extension of boundary data. The data enter only through
// the right-hand side, so the solve runs to a tighter residual than the
// torsion solves to keep nodal values accurate to about 1e-10.
inline ScalarField solve_harmonic(const TriMesh& mesh, const BoundaryData& data, double rel_tol = 1e-12) {
  if (mesh.boundary_edges.empty()) throw DomainError("solve_harmonic: mesh has no boundary");
  std::vector<char> fixed(mesh.num_nodes(), 0);
  ScalarField f{&mesh, std::vector<double>(mesh.num_nodes(), 0.0)};
  double s = 0.0;
  for (const auto& e : mesh.boundary_edges) {
    fixed[e.a] = 1;
    f.values[e.a] = data(e.tag, s, mesh.nodes[e.a]);
    if (!std::isfinite(f.values[e.a])) throw DomainError("solve_harmonic: boundary data not finite");
    s += distance(mesh.nodes[e.a], mesh.nodes[e.b]);
  }
  const auto sys = detail::assemble(mesh);
  detail::solve_constrained(sys, 0.0, fixed, f.values, rel_tol);
  return f;
}

// Integral of |grad u|^2 for a P1 field.
inline double dirichlet_energy(const ScalarField& u) {
  const TriMesh& mesh = *u.mesh;
  double e = 0.0;
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    double area = 0.0;
    const auto g = detail::hat_gradients(mesh, t, &area);
    const auto& v = mesh.triangles[t];
    const Vec2 grad = u.values[v[0]] * g[0] + u.values[v[1]] * g[1] + u.values[v[2]] * g[2];
    e += area * norm2(grad);
  }
  return e;
}

// Integral of a P1 field.
inline double integrate(const ScalarField& u) {
  const TriMesh& mesh = *u.mesh;
  double s = 0.0;
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto& v = mesh.triangles[t];
    s += mesh.triangle_area(t) * (u.values[v[0]] + u.values[v[1]] + u.values[v[2]]) / 3.0;
  }
  return s;
}

struct EdgeFlux {
  int a;
  int b;
  std::string tag;
  Vec2 midpoint;
  double length;
  double q_a;        // recovered outward normal derivative at a, along this edge
  double q_b;        // same at b
  double recovered;  // midpoint value (q_a + q_b) / 2
  double element;    // grad u . n on the adjacent element
  bool natural;      // zero flux imposed by the natural condition
};

struct BoundaryFlux {
  std::vector<EdgeFlux> edges;  // same order as mesh.boundary_edges

  // Recovered flux at parameter s in [0,1] along edge k (linear).
  double at(std::size_t k, double s) const { return (1.0 - s) * edges[k].q_a + s * edges[k].q_b; }
};

// Boundary nodes where the boundary turns by more than this are corners;
// the recovered flux may jump there.
inline constexpr double kFluxCornerAngle = 10.0 * kPi / 180.0;

// Outward normal derivative of a field solving -Δu = source on this mesh.
//
// The weak residual r_i = (K u - source F)_i at a boundary node equals the
// boundary integral of the flux against the hat function of that node.
// Along each smooth stretch of boundary the flux is taken continuous and
// piecewise linear and found by inverting the boundary mass matrix. At
// corners (and next to natural edges) the residual cannot be split between
// the two sides, so the element-gradient value of the adjacent element is
// used as the end value of each stretch. Edges tagged with one of
// natural_tags carry zero flux.
inline BoundaryFlux boundary_flux(const TriMesh& mesh, const ScalarField& field, double source,
                                  const std::vector<std::string>& natural_tags = {}) {
  auto is_natural = [&](const std::string& tag) {
    return std::find(natural_tags.begin(), natural_tags.end(), tag) != natural_tags.end();
  };
  const auto sys = detail::assemble(mesh);
  std::vector<double> ku;
  sys.K.multiply(field.values, ku);
  const int n = int(mesh.num_nodes());
  const std::size_t ne = mesh.boundary_edges.size();

  std::unordered_map<std::uint64_t, int> owner;
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto& v = mesh.triangles[t];
    for (int i = 0; i < 3; ++i)
      owner[(std::uint64_t(std::uint32_t(v[i])) << 32) | std::uint32_t(v[(i + 1) % 3])] = int(t);
  }

  BoundaryFlux out;
  std::vector<int> in_edge(n, -1), out_edge(n, -1);
  for (std::size_t k = 0; k < ne; ++k) {
    const auto& e = mesh.boundary_edges[k];
    const Vec2 pa = mesh.nodes[e.a], pb = mesh.nodes[e.b];
    const Vec2 edge = pb - pa;
    const double len = norm(edge);
    const Vec2 normal = Vec2{edge.y, -edge.x} / len;  // domain on the left
    const int t = owner.at((std::uint64_t(std::uint32_t(e.a)) << 32) | std::uint32_t(e.b));
    const auto g = detail::hat_gradients(mesh, std::size_t(t));
    const auto& v = mesh.triangles[t];
    const Vec2 grad = field.values[v[0]] * g[0] + field.values[v[1]] * g[1] + field.values[v[2]] * g[2];
    const bool nat = is_natural(e.tag);
    const double el = dot(grad, normal);
    out.edges.push_back({e.a, e.b, e.tag, 0.5 * (pa + pb), len, nat ? 0.0 : el, nat ? 0.0 : el, 0.0, el, nat});
    out_edge[e.a] = int(k);
    in_edge[e.b] = int(k);
  }

  // Smooth interior nodes of non-natural stretches become unknowns.
  std::vector<int> unknown(n, -1);
  int nu = 0;
  for (int i = 0; i < n; ++i) {
    const int ei = in_edge[i], eo = out_edge[i];
    if (ei < 0 || eo < 0 || out.edges[ei].natural || out.edges[eo].natural) continue;
    const Vec2 d1 = mesh.nodes[i] - mesh.nodes[out.edges[ei].a], d2 = mesh.nodes[out.edges[eo].b] - mesh.nodes[i];
    if (std::atan2(std::abs(cross(d1, d2)), dot(d1, d2)) > kFluxCornerAngle) continue;
    unknown[i] = nu++;
  }
  std::vector<double> rhs(nu, 0.0);
  for (int i = 0; i < n; ++i)
    if (unknown[i] >= 0) rhs[unknown[i]] = ku[i] - source * sys.F[i];
  std::vector<Triplet> entries;
  for (const EdgeFlux& e : out.edges) {
    if (e.natural) continue;
    const int i = unknown[e.a], j = unknown[e.b];
    const double m_diag = e.length / 3.0, m_off = e.length / 6.0;
    if (i >= 0) entries.push_back({i, i, m_diag});
    if (j >= 0) entries.push_back({j, j, m_diag});
    if (i >= 0 && j >= 0) {
      entries.push_back({i, j, m_off});
      entries.push_back({j, i, m_off});
    } else if (i >= 0) {
      rhs[i] -= m_off * e.q_b;  // fixed end value at b
    } else if (j >= 0) {
      rhs[j] -= m_off * e.q_a;
    }
  }
  std::vector<double> q(nu, 0.0);
  if (nu > 0) {
    const CsrMatrix mass = csr_from_triplets(nu, std::move(entries));
    conjugate_gradient(mass, rhs, q, 1e-13, 10 * nu + 100);
  }
  for (EdgeFlux& e : out.edges) {
    if (e.natural) continue;
    if (unknown[e.a] >= 0) e.q_a = q[unknown[e.a]];
    if (unknown[e.b] >= 0) e.q_b = q[unknown[e.b]];
    e.recovered = 0.5 * (e.q_a + e.q_b);
  }
  return out;
}

}  // namespace minwidth

#endif  // MINWIDTH_FEM_HPP
