// minwidth-lab: runs the verification experiments.
//
//   minwidth-lab <experiment> [--config FILE] [--out DIR] [--h-mesh F] [--n-arc N] [--seed N]
//   minwidth-lab run-all --config-dir DIR [--out DIR]
//   minwidth-lab list
//
// Exit codes: 0 all checks pass, 1 a check failed or the run aborted, 2 usage
// or configuration error. run-all returns 0 or 1; broken configurations are
// reported in its summary.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "minwidth/experiments.hpp"

namespace {

int print_report(const minwidth::ExperimentReport& rep) {
  for (const auto& c : rep.checks)
    std::printf("%s  %-55s value=%-14s limit=%s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(),
                minwidth::format_number(c.value, 6).c_str(), minwidth::format_number(c.limit, 6).c_str());
  if (!rep.error.empty()) std::printf("ERROR %s\n", rep.error.c_str());
  std::printf("%s: %s (%.1f s)\n", rep.experiment.c_str(), rep.passed() ? "pass" : "fail", rep.wall_seconds);
  return rep.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace minwidth;
  CLI::App app{"Numerical verification experiments for minimal-width convex bodies"};

  std::string experiment, config_file, out_dir = "out", config_dir;
  std::optional<double> h_mesh;
  std::optional<int> n_arc, seed;

  app.add_option("experiment", experiment, "experiment name (see 'list')");
  app.add_option("--config", config_file, "JSON configuration file");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--h-mesh", h_mesh, "override h_mesh");
  app.add_option("--n-arc", n_arc, "override n_arc");
  app.add_option("--seed", seed, "override seed");
  app.add_option("--config-dir", config_dir, "directory of configurations (run-all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (experiment.empty()) {
      std::cerr << app.help();
      return 2;
    }
    if (experiment == "list") {
      for (const auto& n : experiment_names()) std::printf("%s\n", n.c_str());
      return 0;
    }
    if (experiment == "run-all") {
      if (config_dir.empty()) throw ConfigInvalid("run-all needs --config-dir");
      const SuiteSummary s = run_all(config_dir, out_dir);
      for (const auto& e : s.entries)
        std::printf("%-6s %-28s %s %s\n", e.status.c_str(), e.config.c_str(), e.experiment.c_str(), e.message.c_str());
      std::printf("summary: %zu experiments, %s\n", s.entries.size(), s.all_passed() ? "pass" : "fail");
      return s.all_passed() ? 0 : 1;
    }
    json cfg = config_file.empty() ? json::object() : load_json_file(config_file);
    if (!cfg.is_object()) throw ConfigInvalid("configuration must be a JSON object");
    std::vector<std::string> overrides;
    if (h_mesh) {
      cfg["h_mesh"] = *h_mesh;
      overrides.push_back("h_mesh");
    }
    if (n_arc) {
      cfg["n_arc"] = *n_arc;
      overrides.push_back("n_arc");
    }
    if (seed) {
      cfg["seed"] = *seed;
      overrides.push_back("seed");
    }
    const ExperimentReport rep = run_experiment(experiment, cfg, out_dir, overrides);
    return print_report(rep);
  } catch (const UnknownExperiment& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  } catch (const ConfigInvalid& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  } catch (const Error& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  }
}
