#ifndef MINWIDTH_EXPERIMENTS_HPP
#define MINWIDTH_EXPERIMENTS_HPP

// Named experiments with JSON configuration, CSV/SVG output and a pass/fail
// report. Requires nlohmann/json on the include path.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "minwidth/cheeger.hpp"
#include "minwidth/errors.hpp"
#include "minwidth/fem.hpp"
#include "minwidth/geometry.hpp"
#include "minwidth/halfdisk_kernel.hpp"
#include "minwidth/io.hpp"
#include "minwidth/mesh.hpp"
#include "minwidth/shape_analysis.hpp"

namespace minwidth {

namespace fs = std::filesystem;
using json = nlohmann::json;

struct CheckResult {
  std::string name;
  bool passed;
  double value;
  double limit;
  std::string detail;
};

struct ExperimentReport {
  std::string experiment;
  std::vector<CheckResult> checks;
  std::vector<std::string> files;
  double wall_seconds = 0.0;
  std::string error;  // set when the experiment could not run

  bool passed() const {
    return error.empty() && std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
  }

  // value and limit are reported as computed; ok decides the status.
  void check(std::string name, bool ok, double value, double limit, std::string detail = {}) {
    checks.push_back({std::move(name), ok, value, limit, std::move(detail)});
  }
};

inline json to_json(const ExperimentReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name},
                      {"status", c.passed ? "pass" : "fail"},
                      {"value", c.value},
                      {"limit", c.limit},
                      {"detail", c.detail}});
  json j = {{"experiment", r.experiment},
            {"status", r.passed() ? "pass" : "fail"},
            {"checks", checks},
            {"files", r.files},
            {"wall_time_s", r.wall_seconds}};
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

// ---------------------------------------------------------------------------
// Configuration.

// Typed access to a JSON object. Every key read is marked as known; finish()
// rejects the rest and reports all field errors at once.
class ConfigReader {
 public:
  explicit ConfigReader(json j = json::object()) : j_(std::move(j)) {
    if (!j_.is_object()) throw ConfigInvalid("configuration must be a JSON object");
    known_.insert("experiment");
    known_.insert("description");
  }

  // Keys that may be present without being used (command-line overrides).
  void allow(const std::string& key) { optional_.insert(key); }

  double number(const std::string& key, double def, double lo, double hi) {
    known_.insert(key);
    if (!j_.contains(key)) return def;
    const json& v = j_[key];
    if (!v.is_number()) {
      errors_.push_back(key + ": expected a number");
      return def;
    }
    const double x = v.get<double>();
    if (!(x >= lo && x <= hi)) {
      errors_.push_back(key + ": " + format_number(x) + " outside [" + format_number(lo) + ", " + format_number(hi) +
                        "]");
      return def;
    }
    return x;
  }

  int integer(const std::string& key, int def, int lo, int hi) {
    known_.insert(key);
    if (!j_.contains(key)) return def;
    const json& v = j_[key];
    if (!v.is_number_integer()) {
      errors_.push_back(key + ": expected an integer");
      return def;
    }
    const long long x = v.get<long long>();
    if (x < lo || x > hi) {
      errors_.push_back(key + ": " + std::to_string(x) + " outside [" + std::to_string(lo) + ", " +
                        std::to_string(hi) + "]");
      return def;
    }
    return int(x);
  }

  bool flag(const std::string& key, bool def) {
    known_.insert(key);
    if (!j_.contains(key)) return def;
    if (!j_[key].is_boolean()) {
      errors_.push_back(key + ": expected true or false");
      return def;
    }
    return j_[key].get<bool>();
  }

  std::string choice(const std::string& key, const std::string& def, const std::vector<std::string>& allowed) {
    known_.insert(key);
    if (!j_.contains(key)) return def;
    if (!j_[key].is_string()) {
      errors_.push_back(key + ": expected a string");
      return def;
    }
    const std::string s = j_[key].get<std::string>();
    if (std::find(allowed.begin(), allowed.end(), s) == allowed.end()) {
      std::string opts;
      for (const auto& a : allowed) opts += (opts.empty() ? "" : ", ") + a;
      errors_.push_back(key + ": '" + s + "' is not one of {" + opts + "}");
      return def;
    }
    return s;
  }

  void require(bool ok, const std::string& message) {
    if (!ok) errors_.push_back(message);
  }

  void finish() {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!known_.count(it.key()) && !optional_.count(it.key())) errors_.push_back(it.key() + ": unknown key");
    if (!errors_.empty()) {
      std::string msg;
      for (const auto& e : errors_) msg += (msg.empty() ? "" : "; ") + e;
      throw ConfigInvalid(msg);
    }
  }

 private:
  json j_;
  std::set<std::string> known_, optional_;
  std::vector<std::string> errors_;
};

inline std::vector<double> uniform_grid(double a, double b, int n) {
  if (n == 1) return {a};
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = a + (b - a) * i / (n - 1);
  g.back() = b;
  return g;
}

inline double deg(double d) { return d * kPi / 180.0; }

// ---------------------------------------------------------------------------
// Experiments. Each reads its whole configuration before computing.

struct ExperimentContext {
  ConfigReader& cfg;
  fs::path out;
  ExperimentReport& report;

  fs::path file(const std::string& name) {
    report.files.push_back(name);
    return out / name;
  }
};

inline void experiment_cheeger_scan(ExperimentContext& ctx) {
  auto& c = ctx.cfg;
  const int r_count = c.integer("r_count", 129, 3, 100000);
  const int bisection_count = c.integer("bisection_count", 17, 2, 1000);
  const int n_arc = c.integer("n_arc", 512, 8, 1 << 16);
  const double tol = c.number("bisection_tol", 2e-3, 0.0, 1.0);
  c.finish();
  auto& rep = ctx.report;

  CsvWriter scan(ctx.file("cheeger_scan.csv").string(), {"r", "h", "t_star", "area"});
  double prev = std::numeric_limits<double>::infinity(), worst_step = -std::numeric_limits<double>::infinity();
  for (double r : uniform_grid(1.0 / 3.0, 0.5, r_count)) {
    const CheegerResult res = cheeger_three_cap(r);
    scan.row(r, res.h, res.t_star, cap_area_f(r).f);
    if (std::isfinite(prev)) worst_step = std::max(worst_step, res.h - prev);
    prev = res.h;
  }
  rep.check("h strictly decreasing in r", worst_step < 0.0, worst_step, 0.0, "largest consecutive difference");
  const double h13 = cheeger_three_cap(1.0 / 3.0).h, h12 = cheeger_three_cap(0.5).h;
  const double exact13 = 3.0 + std::sqrt(kPi * std::sqrt(3.0));
  rep.check("h(1/3) = 3 + sqrt(pi sqrt 3)", std::abs(h13 - exact13) <= 1e-9, std::abs(h13 - exact13), 1e-9);
  rep.check("h(1/2) = 4", std::abs(h12 - 4.0) <= 1e-12, std::abs(h12 - 4.0), 1e-12);

  CsvWriter bis(ctx.file("cheeger_bisection.csv").string(), {"r", "h_closed", "h_bisection", "difference"});
  double worst = 0.0;
  for (double r : uniform_grid(1.0 / 3.0, 0.5, bisection_count)) {
    const ThreeCapParams p{r, 0.0, kTwoPi / 3, 2 * kTwoPi / 3, n_arc};
    const double hb = cheeger_bisection(build_three_cap(p)).h, hc = cheeger_three_cap(r).h;
    bis.row(r, hc, hb, hb - hc);
    worst = std::max(worst, std::abs(hb - hc));
  }
  rep.check("bisection matches closed form", worst <= tol, worst, tol, "max |h_bisection - h_closed|");
  const ConvexPolygon square({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  const double hs = cheeger_bisection(square, 1e-12).h, hs_exact = 2.0 + std::sqrt(kPi);
  rep.check("unit square h = 2 + sqrt(pi)", std::abs(hs - hs_exact) <= 1e-6, std::abs(hs - hs_exact), 1e-6);
  emit_geometry_svg(build_three_cap(ThreeCapParams::equilateral(0.4)), ctx.file("three_cap.svg").string());
}

inline void experiment_pal_area(ExperimentContext& ctx) {
  auto& c = ctx.cfg;
  const int r_count = c.integer("r_count", 1000, 3, 1000000);
  c.finish();
  auto& rep = ctx.report;
  CsvWriter csv(ctx.file("pal_area.csv").string(), {"r", "f", "fprime"});
  double min_fp = std::numeric_limits<double>::infinity();
  const auto rows = pal_area_scan(uniform_grid(1.0 / 3.0, 0.5, r_count + 2));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    csv.row(rows[i].r, rows[i].f, rows[i].fprime);
    if (i > 0 && i + 1 < rows.size()) min_fp = std::min(min_fp, rows[i].fprime);
  }
  const double f13 = cap_area_f(1.0 / 3.0).f, f12 = cap_area_f(0.5).f;
  rep.check("f(1/3) = sqrt(3)/3", std::abs(f13 - std::sqrt(3.0) / 3.0) <= 1e-12, std::abs(f13 - std::sqrt(3.0) / 3.0),
            1e-12);
  rep.check("f(1/2) = pi/4", std::abs(f12 - kPi / 4.0) <= 1e-12, std::abs(f12 - kPi / 4.0), 1e-12);
  rep.check("f' > 0 on the interior grid", min_fp > 0.0, min_fp, 0.0, "min f'");
}

inline void experiment_torsion_landscape(ExperimentContext& ctx) {
  auto& c = ctx.cfg;
  const double r = c.number("r", 0.4, 1.0 / 3.0 + 1e-9, 0.5 - 1e-9);
  const double step_deg = c.number("grid_step_deg", 5.0, 0.5, 60.0);
  const double h = c.number("h_mesh", 0.02, 1e-3, 0.2);
  const int n_arc = c.integer("n_arc", 256, 16, 1 << 14);
  c.finish();
  auto& rep = ctx.report;
  const Landscape L = fixed_inradius_landscape(r, deg(step_deg), h, true, n_arc);
  const double disk = kPi * std::pow(r, 4) / 8.0;
  CsvWriter csv(ctx.file("landscape.csv").string(),
                {"phi_B_deg", "phi_C_deg", "T_h", "T_h2", "excess_h2", "excess_error"},
                "phi_A = 0; excess = T - T(equilateral); excess_error = |excess_h - excess_h2|");
  const bool has_equi = L.equilateral < L.rows.size();
  rep.check("equilateral configuration on the grid", has_equi, double(L.rows.size()), 0.0);
  if (!has_equi) return;
  const LandscapeRow& eq = L.rows[L.equilateral];
  double worst_margin = std::numeric_limits<double>::infinity(), min_T = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < L.rows.size(); ++i) {
    const LandscapeRow& row = L.rows[i];
    const double ex_h = row.T - eq.T, ex_f = row.T_fine - eq.T_fine;
    const double err = std::abs(ex_h - ex_f);
    csv.row(row.phi_B * 180.0 / kPi, row.phi_C * 180.0 / kPi, row.T, row.T_fine, ex_f, err);
    min_T = std::min(min_T, row.T_fine);
    if (i != L.equilateral) worst_margin = std::min(worst_margin, ex_f - 2.0 * err);
  }
  rep.check("argmin is the equilateral configuration", L.argmin == L.equilateral,
            L.rows[L.argmin].phi_B * 180.0 / kPi, 120.0,
            "argmin phi_B (deg); phi_C = " + format_number(L.rows[L.argmin].phi_C * 180.0 / kPi, 6));
  rep.check("excess over equilateral > 2 x error estimate", worst_margin > 0.0, worst_margin, 0.0,
            "min over non-equilateral rows of excess - 2 error");
  rep.check("T >= T(disk of radius r)", min_T >= disk, min_T, disk);
  emit_geometry_svg(build_three_cap({r, 0.0, eq.phi_B, eq.phi_C, n_arc}), ctx.file("equilateral.svg").string());
}

inline ThreeCapParams read_three_cap(ConfigReader& c, ThreeCapParams def) {
  ThreeCapParams p;
  p.r = c.number("r", def.r, 1.0 / 3.0, 0.5);
  p.phi_A = c.number("phi_A", def.phi_A, -10.0, 10.0);
  p.phi_B = c.number("phi_B", def.phi_B, -10.0, 10.0);
  p.phi_C = c.number("phi_C", def.phi_C, -10.0, 10.0);
  p.n_arc = c.integer("n_arc", def.n_arc, 8, 1 << 14);
  return p;
}

inline void experiment_vertex_derivative(ExperimentContext& ctx) {
  auto& c = ctx.cfg;
  const ThreeCapParams p = read_three_cap(c, {0.4, 0.0, 2.0, -2.2, 256});
  const std::string vertex = c.choice("vertex", "A", {"A", "B", "C"});
  const std::string toward = c.choice("toward", "C", {"A", "B", "C"});
  const double h = c.number("h_mesh", 0.01, 1e-3, 0.1);
  const double step = c.number("fd_step", 1e-3, 1e-6, 0.1);
  const double tol = c.number("agreement_tol", 0.05, 0.0, 1.0);
  const double equi_tol = c.number("equilateral_tol", 5e-3, 0.0, 1.0);
  c.require(vertex != toward, "toward: must differ from vertex");
  c.finish();
  auto& rep = ctx.report;
  const char v = vertex[0];
  const ThreeCapLayout L = three_cap_layout(p);
  const int dir = direction_towards(L, v, toward[0]);
  const VertexDerivative d = vertex_shape_derivative(p, v, h, step);
  const VertexDerivative e = vertex_shape_derivative(ThreeCapParams::equilateral(p.r, p.n_arc), v, h, step);

  CsvWriter csv(ctx.file("vertex_derivative.csv").string(),
                {"configuration", "T", "dT_dphi_flux", "dT_dphi_fd", "dT_dphi_fd_2step", "dT_dphi_richardson",
                 "relative_disagreement", "direction_sign"},
                "derivative with respect to the counterclockwise direction angle of vertex " + vertex);
  csv.row(std::string("given"), d.T, d.dT_dphi_flux, d.dT_dphi_fd, d.dT_dphi_fd_2step, d.dT_dphi_richardson,
          d.relative_disagreement(), dir);
  csv.row(std::string("equilateral"), e.T, e.dT_dphi_flux, e.dT_dphi_fd, e.dT_dphi_fd_2step, e.dT_dphi_richardson,
          e.relative_disagreement(), dir);
  rep.check("flux formula matches finite differences", d.relative_disagreement() <= tol, d.relative_disagreement(), tol);
  const double toward_rate = dir * d.dT_dphi_flux;
  rep.check("torsion decreases when " + vertex + " moves toward " + toward, toward_rate < 0.0, toward_rate, 0.0,
            "directional derivative of T");
  rep.check("equilateral derivative vanishes", std::abs(e.dT_dphi_flux) <= equi_tol * e.T, std::abs(e.dT_dphi_flux),
            equi_tol * e.T);
  emit_geometry_svg(build_three_cap(p), ctx.file("configuration.svg").string());
}

inline void experiment_trace_compare(ExperimentContext& ctx) {
  auto& c = ctx.cfg;
  const double r = c.number("r", 0.4, 1.0 / 3.0 + 1e-9, 0.5 - 1e-9);
  const double extra_B = c.number("gap_AB_extra", 0.05, 0.0, 3.0);
  const double extra_C = c.number("gap_BC_extra", 0.6, 0.0, 3.0);
  const int samples = c.integer("samples", 50, 3, 10000);
  const int central = c.integer("central_samples", 30, 0, 10000);
  const double h = c.number("h_mesh", 0.005, 1e-3, 0.1);
  const int n_arc = c.integer("n_arc", 256, 8, 1 << 14);
  c.require(central <= samples, "central_samples: must not exceed samples");
  c.finish();
  auto& rep = ctx.report;
  const double a = cap_half_angle(r);
  const ThreeCapParams p{r, 0.0, 2 * a + extra_B, 4 * a + extra_B + extra_C, n_arc};
  const TraceComparison tc = trace_compare_BC(p, samples, h);
  CsvWriter csv(ctx.file("trace_compare.csv").string(), {"t", "u_gamma_B", "u_gamma_C", "difference", "error"},
                "eps_disc = " + format_number(tc.eps_disc, 12));
  const int first = (samples - central) / 2;
  double worst_all = std::numeric_limits<double>::infinity(), worst_central = worst_all;
  for (int k = 0; k < samples; ++k) {
    const auto& row = tc.table.rows[k];
    csv.row(row.parameter, row.lhs, row.rhs, row.difference, row.error);
    worst_all = std::min(worst_all, row.difference + tc.eps_disc);
    if (k >= first && k < first + central) worst_central = std::min(worst_central, row.difference - tc.eps_disc);
  }
  rep.check("difference >= -eps_disc at all samples", worst_all >= 0.0, worst_all, 0.0, "min of difference + eps");
  rep.check("difference >= +eps_disc at central samples", worst_central >= 0.0, worst_central, 0.0,
            "min of difference - eps");
  emit_geometry_svg(build_three_cap(tc.normalized), ctx.file("configuration.svg").string());
}

inline void experiment_hexagon_scan(ExperimentContext& ctx) {
  auto& c = ctx.cfg;
  const int r_count = c.integer("r_count", 17, 2, 1000);
  const double h = c.number("h_mesh", 0.01, 1e-3, 0.1);
  const double slice_tol = c.number("slice_tol", 0.01, 0.0, 1.0);
  c.finish();
  auto& rep = ctx.report;
  const auto rows = hexagon_scan(uniform_grid(1.0 / 3.0, 0.5, r_count), h);
  CsvWriter csv(ctx.file("hexagon_scan.csv").string(),
                {"r", "T_h", "T_h2", "error", "slice6", "slice_relative_difference"});
  double worst_margin = std::numeric_limits<double>::infinity(), worst_slice = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    const double rel = std::abs(row.T_fine - row.slice6) / row.T_fine;
    csv.row(row.r, row.T, row.T_fine, row.error, row.slice6, rel);
    worst_slice = std::max(worst_slice, rel);
    if (i > 0)
      worst_margin =
          std::min(worst_margin, row.T_fine - rows[i - 1].T_fine - 2.0 * std::max(row.error, rows[i - 1].error));
  }
  rep.check("T(H_r) strictly increasing beyond 2 x error", worst_margin > 0.0, worst_margin, 0.0,
            "min over steps of increment - 2 max error");
  rep.check("hexagon torsion = 6 x slice energy", worst_slice <= slice_tol, worst_slice, slice_tol,
            "max relative difference");
  emit_geometry_svg({build_three_cap(ThreeCapParams::equilateral(0.4)), build_hexagon(0.4)},
                    ctx.file("hexagon_in_three_cap.svg").string());
}

inline void experiment_slice_symmetry(ExperimentContext& ctx) {
  auto& c = ctx.cfg;
  const double r = c.number("r", 0.4, 1.0 / 3.0, 0.5 - 1e-9);
  const int samples = c.integer("samples", 20, 1, 10000);
  const double h = c.number("h_mesh", 0.01, 1e-3, 0.1);
  c.finish();
  auto& rep = ctx.report;
  const ComparisonTable t = slice_flux_symmetry(r, samples, h);
  const ComparisonTable s = slice_flux_symmetry(0.5, samples, h);
  CsvWriter csv(ctx.file("slice_symmetry.csv").string(),
                {"r", "s", "flux2_U", "flux2_V", "difference", "error"}, "U on MY, V on MZ at fraction s from M");
  double worst = std::numeric_limits<double>::infinity(), worst_sym = worst;
  for (const auto& row : t.rows) {
    csv.row(r, row.parameter, row.lhs, row.rhs, row.difference, row.error);
    worst = std::min(worst, row.difference - row.error);
  }
  for (const auto& row : s.rows) {
    csv.row(0.5, row.parameter, row.lhs, row.rhs, row.difference, row.error);
    worst_sym = std::min(worst_sym, row.error - std::abs(row.difference));
  }
  rep.check("flux^2(U) > flux^2(V) beyond error", worst > 0.0, worst, 0.0, "min of difference - error");
  rep.check("r = 1/2 differences within error of 0", worst_sym >= 0.0, worst_sym, 0.0, "min of error - |difference|");
  emit_geometry_svg(build_slice_triangle(r), ctx.file("slice.svg").string());
}

inline void experiment_kernel_cubic(ExperimentContext& ctx) {
  auto& c = ctx.cfg;
  const int seed = c.integer("seed", 12345, 0, 2147483647);
  const int identity_samples = c.integer("identity_samples", 100, 1, 1000000);
  const int q_samples = c.integer("q_samples", 10000, 1, 10000000);
  const int unimodal_cases = c.integer("unimodal_cases", 20, 1, 10000);
  const int unimodal_grid = c.integer("unimodal_grid", 2000, 10, 1000000);
  c.finish();
  auto& rep = ctx.report;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);

  CsvWriter ids(ctx.file("cubic_identities.csv").string(),
                {"C", "t", "err_h_minus1", "err_h_plus1", "err_h_cos_t", "X0", "s0", "sign_changes"});
  double worst_id = 0.0;
  int bad_roots = 0;
  for (int i = 0; i < identity_samples; ++i) {
    const double C = 1.0 + 4.0 * U(rng), t = kPi * (0.001 + 0.998 * U(rng)), ct = std::cos(t);
    const double e1 = std::abs(kernel_cubic(C, t, -1.0) - (C + ct) * (C + ct));
    const double e2 = std::abs(kernel_cubic(C, t, 1.0) + (C - ct) * (C - ct));
    const double e3 = std::abs(kernel_cubic(C, t, ct) + ct * (C - 1.0) * (C - 1.0));
    worst_id = std::max({worst_id, e1, e2, e3});
    const CubicRoot root = cubic_root_X0(C, t);
    const int changes = cubic_sign_changes(C, t);
    if (changes != 1) ++bad_roots;
    ids.row(C, t, e1, e2, e3, root.X0, root.s0, changes);
  }
  rep.check("endpoint identities of the cubic", worst_id <= 1e-12, worst_id, 1e-12);
  rep.check("unique sign change of the cubic on [-1, 1]", bad_roots == 0, bad_roots, 0.0, "cases with != 1 change");
  const double r = 0.999, C = (1 + r * r) / (2 * r);
  const double gap = std::abs(cubic_root_X0(C, kPi / 4).s0 - kPi / 4);
  rep.check("s0 -> t as r -> 1 (r = 0.999, t = pi/4)", gap <= 0.01, gap, 0.01);

  double min_q = std::numeric_limits<double>::infinity();
  for (int i = 0; i < q_samples; ++i) {
    const double rr = kMaxKernelRadius * U(rng), t = kPi * U(rng), s = kPi * U(rng);
    min_q = std::min(min_q, kernel_Q(KernelPoint::make(std::max(rr, 1e-6), t, s)));
  }
  rep.check("Q >= 0 on random samples", min_q >= 0.0, min_q, 0.0);

  CsvWriter uni(ctx.file("kernel_unimodality.csv").string(), {"r", "t", "s0", "violations"});
  int violations_total = 0;
  for (int k = 0; k < unimodal_cases; ++k) {
    const double rr = 0.05 + 0.94 * U(rng), t = kPi * (0.02 + 0.96 * U(rng));
    const double s0 = cubic_root_X0((1 + rr * rr) / (2 * rr), t).s0;
    const double ds = kPi / unimodal_grid;
    int violations = 0;
    for (int i = 1; i < unimodal_grid; ++i) {
      const double s = i * ds;
      if (std::abs(s - s0) <= ds) continue;
      const double d = kernel_Q_cosine(rr, t, s + ds) - kernel_Q_cosine(rr, t, s - ds);
      if ((s < s0 && !(d > 0.0)) || (s > s0 && !(d < 0.0))) ++violations;
    }
    violations_total += violations;
    uni.row(rr, t, s0, violations);
  }
  rep.check("s -> Q increasing before s0, decreasing after", violations_total == 0, violations_total, 0.0,
            "grid points with the wrong centered-difference sign");
}

inline void experiment_slide_monotonicity(ExperimentContext& ctx) {
  auto& c = ctx.cfg;
  const double t = c.number("t", 0.3, 1e-6, kPi);
  const double theta = c.number("theta", 0.8, 1e-6, kPi);
  const double theta_p = c.number("theta_prime", 1.2, 1e-6, kPi);
  const double delta = c.number("delta", 0.3, 1e-6, kPi);
  const double r_min = c.number("r_min", 0.01, 1e-6, kMaxKernelRadius);
  const double r_max = c.number("r_max", 0.999, 1e-6, kMaxKernelRadius);
  const int r_count = c.integer("r_count", 100, 2, 100000);
  const double h = c.number("h_mesh", 0.01, 1e-3, 0.1);
  const double fem_tol = c.number("fem_tol", 1e-3, 0.0, 1.0);
  c.require(r_min < r_max, "r_min: must be below r_max");
  c.require(t < theta && theta <= theta_p && theta_p + delta <= kPi, "angles: need t < theta <= theta_prime <= pi - delta");
  c.finish();
  auto& rep = ctx.report;
  const auto grid = uniform_grid(r_min, r_max, r_count);
  const Profile phi = sine_bump(delta);
  const Profile psi = [t](double x) { return x * (t - x); };
  CsvWriter csv(ctx.file("slide_monotonicity.csv").string(),
                {"variant", "r", "t", "u_theta", "u_theta_prime", "difference"});
  for (int variant = 0; variant < 2; ++variant) {
    const SlideReport s = variant == 0 ? slide_monotonicity(t, theta, theta_p, delta, phi, grid)
                                       : slide_monotonicity(t, theta, theta_p, delta, phi, grid, psi, t);
    const std::string name = variant == 0 ? "plain" : "with_psi";
    for (std::size_t i = 0; i < s.r.size(); ++i)
      csv.row(name, s.r[i], t, s.u_theta[i], s.u_theta_prime[i], s.difference[i]);
    const bool ok = s.threshold.has_value() && *s.threshold < 1.0;
    rep.check(name + ": u_theta' < u_theta above a threshold r_t < 1", ok, s.threshold.value_or(1.0), 1.0,
              "threshold r_t; sign changes along the grid: " + std::to_string(s.sign_changes));
  }
  const SlidingArcProblem prob{theta, delta, phi, {}, 0.0};
  const TriMesh mesh = mesh_polygon(build_half_disk(512), h);
  const ScalarField u = solve_u_theta_fem(prob, mesh);
  const PointLocator loc(mesh);
  CsvWriter cross(ctx.file("fem_crosscheck.csv").string(), {"r", "t", "quadrature", "fem", "difference"});
  double worst = 0.0;
  for (const auto& q : std::vector<std::array<double, 2>>{{0.5, 0.3}, {0.7, 0.9}, {0.5, 1.5}, {0.8, 2.0}, {0.3, 2.5}}) {
    const double a = solve_u_theta(prob, q[0], q[1]), b = loc.interpolate(u.values, polar(q[0], q[1]));
    cross.row(q[0], q[1], a, b, a - b);
    worst = std::max(worst, std::abs(a - b));
  }
  rep.check("quadrature matches finite elements", worst <= fem_tol, worst, fem_tol, "max abs difference");
}

inline void experiment_convhull_slide(ExperimentContext& ctx) {
  auto& c = ctx.cfg;
  const double z_A = c.number("z_A", 2.0, 1.0 + 1e-6, 100.0);
  const double theta = c.number("theta", 1.3, 1e-6, kPi);
  const double theta_p = c.number("theta_prime", 1.6, 1e-6, kPi);
  const double delta = c.number("delta", 0.3, 1e-6, kPi);
  const double h = c.number("h_mesh", 0.02, 1e-3, 0.1);
  c.finish();
  auto& rep = ctx.report;
  const ConvhullSlide e = convhull_slide_experiment(z_A, theta, theta_p, delta, sine_bump(delta), h);
  CsvWriter cap(ctx.file("cap_samples.csv").string(), {"x", "y", "u_theta", "u_theta_prime", "difference", "error"});
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < e.cap.rows.size(); ++i) {
    const auto& row = e.cap.rows[i];
    cap.row(e.cap_points[i].x, e.cap_points[i].y, row.lhs, row.rhs, row.difference, row.error);
    worst = std::min(worst, row.difference - row.error);
  }
  CsvWriter flux(ctx.file("flux_AT.csv").string(), {"fraction_from_A", "flux2_theta", "flux2_theta_prime", "difference", "error"});
  double worst_f = std::numeric_limits<double>::infinity();
  for (const auto& row : e.flux_AT.rows) {
    flux.row(row.parameter, row.lhs, row.rhs, row.difference, row.error);
    worst_f = std::min(worst_f, row.difference - row.error);
  }
  rep.check("u_theta > u_theta' in the half cap beyond error", worst > 0.0, worst, 0.0, "min of difference - error");
  rep.check("squared flux on AT larger for theta", worst_f > 0.0, worst_f, 0.0, "min of difference - error");
  emit_geometry_svg(build_convhull_half_disk(z_A), ctx.file("domain.svg").string());
}

inline void experiment_convergence_study(ExperimentContext& ctx) {
  auto& c = ctx.cfg;
  const int n_arc = c.integer("n_arc", 4096, 64, 1 << 16);
  const double disk_tol = c.number("disk_tol", 0.01, 0.0, 1.0);
  const double order_lo = c.number("order_min", 1.8, 0.0, 10.0);
  const double order_hi = c.number("order_max", 2.2, 0.0, 10.0);
  const double tri_tol = c.number("triangle_tol", 0.01, 0.0, 1.0);
  c.finish();
  auto& rep = ctx.report;
  const double exact = kPi / 128.0;
  const ConvexPolygon disk = build_regular_polygon(n_arc, 0.5);
  const std::vector<double> hs{0.08, 0.04, 0.02, 0.01};
  std::vector<double> errs;
  CsvWriter csv(ctx.file("disk_convergence.csv").string(), {"h", "T", "relative_error", "observed_order"});
  for (std::size_t i = 0; i < hs.size(); ++i) {
    const double T = solve_torsion(mesh_polygon(disk, hs[i])).T;
    errs.push_back(std::abs(T - exact));
    const double order = i ? std::log(errs[i - 1] / errs[i]) / std::log(hs[i - 1] / hs[i]) : std::nan("");
    csv.row(hs[i], T, errs[i] / exact, order);
    if (hs[i] == 0.02) rep.check("disk T within 1% at h = 0.02", errs[i] / exact <= disk_tol, errs[i] / exact, disk_tol);
  }
  const double order = std::log(errs.front() / errs.back()) / std::log(hs.front() / hs.back());
  rep.check("observed order in range", order >= order_lo && order <= order_hi, order, order_hi,
            "log(e(0.08) / e(0.01)) / log 8; lower bound " + format_number(order_lo, 6));
  const double T_tri = solve_torsion(mesh_polygon(build_unit_triangle(), 0.01)).T;
  const double tri_exact = 1.0 / (60.0 * std::sqrt(3.0));
  rep.check("equilateral triangle within 1% at h = 0.01", std::abs(T_tri - tri_exact) / tri_exact <= tri_tol,
            std::abs(T_tri - tri_exact) / tri_exact, tri_tol);
}

// ---------------------------------------------------------------------------
// Registry and drivers.

using ExperimentFn = void (*)(ExperimentContext&);

inline const std::map<std::string, ExperimentFn>& experiment_registry() {
  static const std::map<std::string, ExperimentFn> m{
      {"cheeger-scan", experiment_cheeger_scan},
      {"pal-area", experiment_pal_area},
      {"torsion-landscape", experiment_torsion_landscape},
      {"vertex-derivative", experiment_vertex_derivative},
      {"trace-compare", experiment_trace_compare},
      {"hexagon-scan", experiment_hexagon_scan},
      {"slice-symmetry", experiment_slice_symmetry},
      {"kernel-cubic", experiment_kernel_cubic},
      {"slide-monotonicity", experiment_slide_monotonicity},
      {"convhull-slide", experiment_convhull_slide},
      {"convergence-study", experiment_convergence_study},
  };
  return m;
}

inline std::vector<std::string> experiment_names() {
  std::vector<std::string> names;
  for (const auto& [k, v] : experiment_registry()) names.push_back(k);
  return names;
}

// Runs one experiment and writes report.json into `out`. Throws
// UnknownExperiment / ConfigInvalid before anything is computed; other
// errors raised during the run are recorded in the report.
inline ExperimentReport run_experiment(const std::string& name, const json& config, const fs::path& out,
                                       const std::vector<std::string>& optional_keys = {}) {
  const auto& reg = experiment_registry();
  const auto it = reg.find(name);
  if (it == reg.end()) throw UnknownExperiment("'" + name + "'");
  if (config.is_object() && config.contains("experiment") &&
      (!config["experiment"].is_string() || config["experiment"].get<std::string>() != name))
    throw ConfigInvalid("experiment: configuration is for '" + config["experiment"].dump() + "', not '" + name + "'");
  ConfigReader reader(config);
  for (const auto& k : optional_keys) reader.allow(k);
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw IoError("cannot create '" + out.string() + "': " + ec.message());
  ExperimentReport report;
  report.experiment = name;
  ExperimentContext ctx{reader, out, report};
  const auto t0 = std::chrono::steady_clock::now();
  try {
    it->second(ctx);
  } catch (const ConfigInvalid&) {
    throw;
  } catch (const std::exception& e) {
    report.error = e.what();
  }
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  auto os = open_output((out / "report.json").string());
  os << to_json(report).dump(2) << '\n';
  return report;
}

inline json load_json_file(const fs::path& path) {
  auto is = open_input(path.string());
  try {
    return json::parse(is);
  } catch (const json::parse_error& e) {
    throw ConfigInvalid(path.string() + ": " + e.what());
  }
}

struct SuiteEntry {
  std::string config;
  std::string experiment;
  std::string status;  // pass, fail or error
  std::string message;
};

struct SuiteSummary {
  std::vector<SuiteEntry> entries;
  bool all_passed() const {
    return std::all_of(entries.begin(), entries.end(), [](const SuiteEntry& e) { return e.status == "pass"; });
  }
  bool any_error() const {
    return std::any_of(entries.begin(), entries.end(), [](const SuiteEntry& e) { return e.status == "error"; });
  }
};

// Runs every *.json in config_dir (sorted by file name) into out/<stem>/
// and writes out/summary.json. A broken config marks its entry as error and
// the suite continues.
inline SuiteSummary run_all(const fs::path& config_dir, const fs::path& out) {
  if (!fs::is_directory(config_dir)) throw IoError("'" + config_dir.string() + "' is not a directory");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(config_dir))
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  SuiteSummary summary;
  for (const auto& f : files) {
    SuiteEntry entry{f.filename().string(), "", "error", ""};
    try {
      const json cfg = load_json_file(f);
      if (!cfg.is_object() || !cfg.contains("experiment") || !cfg["experiment"].is_string())
        throw ConfigInvalid("experiment: missing or not a string");
      entry.experiment = cfg["experiment"].get<std::string>();
      const ExperimentReport rep = run_experiment(entry.experiment, cfg, out / f.stem());
      entry.status = rep.passed() ? "pass" : (rep.error.empty() ? "fail" : "error");
      entry.message = rep.error;
    } catch (const std::exception& e) {
      entry.message = e.what();
    }
    summary.entries.push_back(entry);
  }
  json j = json::array();
  for (const auto& e : summary.entries)
    j.push_back({{"config", e.config}, {"experiment", e.experiment}, {"status", e.status}, {"message", e.message}});
  std::error_code ec;
  fs::create_directories(out, ec);
  auto os = open_output((out / "summary.json").string());
  os << json{{"status", summary.all_passed() ? "pass" : "fail"}, {"experiments", j}}.dump(2) << '\n';
  return summary;
}

}  // namespace minwidth

#endif  // MINWIDTH_EXPERIMENTS_HPP
