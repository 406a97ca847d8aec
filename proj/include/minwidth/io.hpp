#ifndef MINWIDTH_IO_HPP
#define MINWIDTH_IO_HPP

// Text formats for polygons, meshes and nodal fields, CSV helpers and SVG
// outlines.
//
//   polygon:  n, then n lines "x y tag" ("-" for an empty tag)
//   mesh:     "n_nodes n_triangles n_boundary_edges", nodes "x y",
//             triangles "i j k", boundary edges "i j tag"
//   field:    one value per node line

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "minwidth/errors.hpp"
#include "minwidth/fem.hpp"
#include "minwidth/geometry.hpp"
#include "minwidth/mesh.hpp"

namespace minwidth {

// Shortest round-trip-safe decimal form used in every text output.
inline std::string format_number(double v, int digits = 17) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

inline void write_polygon(std::ostream& os, const ConvexPolygon& poly) {
  os << poly.size() << '\n';
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2 v = poly.vertex(i);
    os << format_number(v.x) << ' ' << format_number(v.y) << ' ' << (poly.tag(i).empty() ? "-" : poly.tag(i))
       << '\n';
  }
}

inline ConvexPolygon read_polygon(std::istream& is) {
  std::size_t n = 0;
  if (!(is >> n) || n < 3) throw IoError("read_polygon: bad vertex count");
  std::vector<Vec2> v(n);
  std::vector<std::string> tags(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(is >> v[i].x >> v[i].y >> tags[i])) throw IoError("read_polygon: truncated vertex list");
    if (tags[i] == "-") tags[i].clear();
  }
  return ConvexPolygon(std::move(v), std::move(tags));
}

inline std::ofstream open_output(const std::string& path) {
  if (path.empty()) throw IoError("empty output path");
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  return os;
}

inline std::ifstream open_input(const std::string& path) {
  if (path.empty()) throw IoError("empty input path");
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open '" + path + "' for reading");
  return is;
}

inline void save_polygon(const std::string& path, const ConvexPolygon& poly) {
  auto os = open_output(path);
  write_polygon(os, poly);
}

inline ConvexPolygon load_polygon(const std::string& path) {
  auto is = open_input(path);
  return read_polygon(is);
}

inline void write_mesh(std::ostream& os, const TriMesh& mesh) {
  os << mesh.num_nodes() << ' ' << mesh.num_triangles() << ' ' << mesh.boundary_edges.size() << '\n';
  for (const Vec2& p : mesh.nodes) os << format_number(p.x) << ' ' << format_number(p.y) << '\n';
  for (const auto& t : mesh.triangles) os << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  for (const auto& e : mesh.boundary_edges) os << e.a << ' ' << e.b << ' ' << e.tag << '\n';
}

inline TriMesh read_mesh(std::istream& is) {
  std::size_t nn = 0, nt = 0, nb = 0;
  if (!(is >> nn >> nt >> nb)) throw IoError("read_mesh: bad header");
  TriMesh mesh;
  mesh.nodes.resize(nn);
  mesh.triangles.resize(nt);
  mesh.boundary_edges.resize(nb);
  for (auto& p : mesh.nodes)
    if (!(is >> p.x >> p.y)) throw IoError("read_mesh: truncated nodes");
  for (auto& t : mesh.triangles)
    if (!(is >> t[0] >> t[1] >> t[2])) throw IoError("read_mesh: truncated triangles");
  for (auto& e : mesh.boundary_edges)
    if (!(is >> e.a >> e.b >> e.tag)) throw IoError("read_mesh: truncated boundary edges");
  for (const auto& t : mesh.triangles)
    for (int v : t)
      if (v < 0 || std::size_t(v) >= nn) throw IoError("read_mesh: node index out of range");
  validate_mesh(mesh);
  return mesh;
}

inline void write_field(std::ostream& os, const ScalarField& field) {
  for (double v : field.values) os << format_number(v) << '\n';
}

// Minimal CSV writer with fixed numeric formatting (%.12g) so that
// identical inputs give byte-identical files.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header, const std::string& comment = {})
      : os_(open_output(path)) {
    if (!comment.empty()) os_ << "# " << comment << '\n';
    for (std::size_t i = 0; i < header.size(); ++i) os_ << (i ? "," : "") << header[i];
    os_ << '\n';
  }

  template <typename... Cells>
  void row(const Cells&... cells) {
    bool first = true;
    ((os_ << (first ? "" : ",") << cell(cells), first = false), ...);
    os_ << '\n';
  }

 private:
  static std::string cell(double v) { return format_number(v, 12); }
  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(std::size_t v) { return std::to_string(v); }
  static std::string cell(bool v) { return v ? "1" : "0"; }
  static std::string cell(const std::string& v) { return v; }
  static std::string cell(const char* v) { return v; }

  std::ofstream os_;
};

// Stroke colour by tag family.
inline const char* svg_tag_color(const std::string& tag) {
  if (tag.rfind("arc", 0) == 0) return "#1f77b4";
  if (tag.rfind("segment", 0) == 0) return "#d62728";
  if (tag == "dirichlet") return "#d62728";
  if (tag == "neumann") return "#2ca02c";
  if (tag == "hexagon") return "#9467bd";
  return "#333333";
}

// Outlines of several polygons in one figure (y axis pointing up), each edge
// stroked with the colour of its tag. Output depends only on the input.
inline std::string polygons_svg(const std::vector<ConvexPolygon>& polys, double size_px = 480.0) {
  if (polys.empty()) throw DomainError("polygons_svg: nothing to draw");
  Vec2 lo = polys.front().bounding_box().first, hi = polys.front().bounding_box().second;
  for (const auto& p : polys) {
    const auto [a, b] = p.bounding_box();
    lo = {std::min(lo.x, a.x), std::min(lo.y, a.y)};
    hi = {std::max(hi.x, b.x), std::max(hi.y, b.y)};
  }
  const double span = std::max(hi.x - lo.x, hi.y - lo.y);
  const double margin = 0.05 * span;
  const double scale = size_px / (span + 2 * margin);
  auto px = [&](Vec2 v) {
    return format_number((v.x - lo.x + margin) * scale, 7) + "," +
           format_number((hi.y - v.y + margin) * scale, 7);
  };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_number((hi.x - lo.x + 2 * margin) * scale, 7)
     << "\" height=\"" << format_number((hi.y - lo.y + 2 * margin) * scale, 7) << "\">\n";
  for (const auto& p : polys) {
    os << "<g fill=\"none\" stroke-width=\"1.5\">\n";
    std::size_t i = 0;
    while (i < p.size()) {
      // Merge runs of edges with the same tag into one polyline.
      std::size_t j = i;
      std::string pts = px(p.vertex(i));
      while (j < p.size() && p.tag(j) == p.tag(i)) {
        pts += " " + px(p.vertex(j + 1));
        ++j;
      }
      os << "<polyline stroke=\"" << svg_tag_color(p.tag(i)) << "\" points=\"" << pts << "\"/>\n";
      i = j;
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

inline void emit_geometry_svg(const std::vector<ConvexPolygon>& polys, const std::string& path) {
  auto os = open_output(path);
  os << polygons_svg(polys);
  if (!os) throw IoError("write failed for '" + path + "'");
}

inline void emit_geometry_svg(const ConvexPolygon& poly, const std::string& path) {
  emit_geometry_svg(std::vector<ConvexPolygon>{poly}, path);
}

}  // namespace minwidth

#endif  // MINWIDTH_IO_HPP
