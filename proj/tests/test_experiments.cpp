#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "minwidth/experiments.hpp"

using namespace minwidth;

#ifndef MINWIDTH_LAB_PATH
#error "MINWIDTH_LAB_PATH must point at the minwidth-lab executable"
#endif

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / "minwidth_test_experiments" / name;
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void write_text(const fs::path& p, const std::string& s) {
  std::ofstream os(p, std::ios::binary);
  os << s;
}

int exit_code(const std::string& args) {
  const std::string cmd = std::string(MINWIDTH_LAB_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(ConfigReader, DefaultsAndValues) {
  ConfigReader c(json{{"r", 0.45}, {"n", 7}, {"flag", true}, {"v", "B"}});
  EXPECT_EQ(c.number("r", 0.4, 0.0, 1.0), 0.45);
  EXPECT_EQ(c.number("missing", 0.4, 0.0, 1.0), 0.4);
  EXPECT_EQ(c.integer("n", 1, 0, 10), 7);
  EXPECT_TRUE(c.flag("flag", false));
  EXPECT_EQ(c.choice("v", "A", {"A", "B"}), "B");
  EXPECT_NO_THROW(c.finish());
}

TEST(ConfigReader, ReportsEveryFieldError) {
  ConfigReader c(json{{"r", 2.0}, {"n", 1.5}, {"v", "Z"}, {"typo", 1}});
  c.number("r", 0.4, 0.0, 1.0);
  c.integer("n", 1, 0, 10);
  c.choice("v", "A", {"A", "B"});
  try {
    c.finish();
    FAIL() << "expected ConfigInvalid";
  } catch (const ConfigInvalid& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("r:"), std::string::npos);
    EXPECT_NE(msg.find("n: expected an integer"), std::string::npos);
    EXPECT_NE(msg.find("v:"), std::string::npos);
    EXPECT_NE(msg.find("typo: unknown key"), std::string::npos);
  }
  EXPECT_THROW(ConfigReader(json::array()), ConfigInvalid);
}

TEST(ConfigReader, AllowedOverridesMayGoUnused) {
  ConfigReader c(json{{"h_mesh", 0.01}});
  c.allow("h_mesh");
  EXPECT_NO_THROW(c.finish());
}

TEST(RunExperiment, UnknownNameAndMismatchedConfig) {
  const fs::path out = fresh_dir("unknown");
  EXPECT_THROW(run_experiment("no-such-thing", json::object(), out), UnknownExperiment);
  EXPECT_THROW(run_experiment("pal-area", json{{"experiment", "cheeger-scan"}}, out), ConfigInvalid);
  EXPECT_THROW(run_experiment("pal-area", json{{"r_count", 0}}, out), ConfigInvalid);
  EXPECT_THROW(run_experiment("pal-area", json{{"bogus", 1}}, out), ConfigInvalid);
}

TEST(RunExperiment, CheegerScanPassesAndWritesFiles) {
  const fs::path out = fresh_dir("cheeger");
  const ExperimentReport rep = run_experiment("cheeger-scan", json::object(), out);
  EXPECT_TRUE(rep.passed());
  for (const auto& f : rep.files) EXPECT_TRUE(fs::exists(out / f)) << f;
  const json report = json::parse(slurp(out / "report.json"));
  EXPECT_EQ(report["status"], "pass");
  // The h column of the scan is strictly decreasing.
  std::ifstream is(out / "cheeger_scan.csv");
  std::string line;
  std::getline(is, line);
  double prev = 1e9;
  int rows = 0;
  while (std::getline(is, line)) {
    const double h = std::stod(line.substr(line.find(',') + 1));
    EXPECT_LT(h, prev);
    prev = h;
    ++rows;
  }
  EXPECT_EQ(rows, 129);
}

TEST(RunExperiment, KernelCubicPasses) {
  const ExperimentReport rep = run_experiment("kernel-cubic", json{{"q_samples", 2000}}, fresh_dir("kernel"));
  EXPECT_TRUE(rep.passed());
  ASSERT_FALSE(rep.checks.empty());
  EXPECT_EQ(rep.checks[0].name, "endpoint identities of the cubic");
  EXPECT_LE(rep.checks[0].value, 1e-12);
}

TEST(RunExperiment, ByteIdenticalOutputs) {
  const fs::path a = fresh_dir("det_a"), b = fresh_dir("det_b");
  const json cfg{{"seed", 99}, {"identity_samples", 20}, {"q_samples", 500}, {"unimodal_cases", 3}};
  const ExperimentReport ra = run_experiment("kernel-cubic", cfg, a);
  run_experiment("kernel-cubic", cfg, b);
  for (const auto& f : ra.files) EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  run_experiment("slice-symmetry", json{{"h_mesh", 0.03}, {"samples", 5}}, a);
  run_experiment("slice-symmetry", json{{"h_mesh", 0.03}, {"samples", 5}}, b);
  EXPECT_EQ(slurp(a / "slice_symmetry.csv"), slurp(b / "slice_symmetry.csv"));
  EXPECT_EQ(slurp(a / "slice.svg"), slurp(b / "slice.svg"));
}

TEST(RunExperiment, FailedCheckIsReported) {
  // A tolerance of zero cannot be met by the bisection.
  const ExperimentReport rep =
      run_experiment("cheeger-scan", json{{"bisection_tol", 0.0}, {"r_count", 5}}, fresh_dir("failing"));
  EXPECT_FALSE(rep.passed());
  EXPECT_TRUE(rep.error.empty());
}

TEST(RunAll, IsolatesBrokenConfigs) {
  const fs::path cfgs = fresh_dir("suite_cfg"), out = fresh_dir("suite_out");
  write_text(cfgs / "a_pal.json", R"({"experiment": "pal-area", "r_count": 50})");
  write_text(cfgs / "b_broken.json", R"({"experiment": "pal-area", "r_count": )");
  write_text(cfgs / "c_unknown.json", R"({"experiment": "nothing"})");
  write_text(cfgs / "notes.txt", "ignored");
  const SuiteSummary s = run_all(cfgs, out);
  ASSERT_EQ(s.entries.size(), 3u);
  EXPECT_EQ(s.entries[0].status, "pass");
  EXPECT_EQ(s.entries[1].status, "error");
  EXPECT_EQ(s.entries[2].status, "error");
  EXPECT_FALSE(s.all_passed());
  const json summary = json::parse(slurp(out / "summary.json"));
  EXPECT_EQ(summary["experiments"].size(), 3u);
  EXPECT_EQ(summary["status"], "fail");
  EXPECT_TRUE(fs::exists(out / "a_pal" / "pal_area.csv"));
}

TEST(RunAll, EmptyDirectory) {
  const SuiteSummary s = run_all(fresh_dir("empty_cfg"), fresh_dir("empty_out"));
  EXPECT_TRUE(s.entries.empty());
  EXPECT_TRUE(s.all_passed());
  EXPECT_THROW(run_all(fresh_dir("x") / "missing", fresh_dir("y")), IoError);
}

TEST(Cli, ExitCodes) {
  const fs::path out = fresh_dir("cli");
  EXPECT_EQ(exit_code("pal-area --out " + out.string()), 0);
  EXPECT_EQ(exit_code("no-such-experiment --out " + out.string()), 2);
  write_text(out / "bad.json", R"({"r_count": "many"})");
  EXPECT_EQ(exit_code("pal-area --config " + (out / "bad.json").string() + " --out " + out.string()), 2);
  write_text(out / "strict.json", R"({"bisection_tol": 0.0, "r_count": 5})");
  EXPECT_EQ(exit_code("cheeger-scan --config " + (out / "strict.json").string() + " --out " + out.string()), 1);
  EXPECT_EQ(exit_code("slice-symmetry --h-mesh 0.03 --out " + out.string()), 0);
  EXPECT_EQ(exit_code("pal-area --bogus"), 2);
  EXPECT_EQ(exit_code("list"), 0);
  EXPECT_EQ(exit_code("run-all --config-dir " + fresh_dir("cli_empty").string() + " --out " + out.string()), 0);
}
