#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <vector>

#include "vex/harness.hpp"

using namespace vex;
namespace fs = std::filesystem;

TEST_CASE("slope fitting and classification") {
  // synthetic bounded data: tiny wobble around a constant
  std::vector<double> bounded = {3.01, 2.99, 3.02, 3.0};
  CHECK(std::abs(fit_log2_slope(bounded)) < 0.15);
  CHECK(classify_slope(fit_log2_slope(bounded)) == "bounded");

  // closed-form divergent data: doubling per level has slope 1
  std::vector<double> divergent = {1.0, 2.0, 4.0, 8.0};
  CHECK(fit_log2_slope(divergent) == doctest::Approx(1.0));
  CHECK(classify_slope(1.0) == "divergent");
  CHECK(classify_slope(0.4) == "borderline");

  std::vector<double> one = {1.0};
  CHECK_THROWS_AS(fit_log2_slope(one), std::invalid_argument);
}

TEST_CASE("check registry and config validation") {
  CHECK(check_ids().size() == 12);
  CHECK_THROWS_AS(run_check("no-such-check"), std::invalid_argument);

  Json bad;
  bad["definitely_not_a_key"] = 1;
  CHECK_THROWS_AS(run_check("infimum-lemma", bad), std::invalid_argument);

  auto d = default_config("infimum-lemma");
  CHECK(d.contains("seed"));
  CHECK(d.at("t_points").get<int>() == 20);
}

TEST_CASE("infimum lemma check passes end to end") {
  auto rep = run_check("infimum-lemma");
  CHECK(rep.verdict == "pass");
  CHECK(rep.exit_code() == 0);
  REQUIRE(rep.cases.size() == 1);
  CHECK(rep.cases[0].at("total").get<int>() == 540);
  CHECK(rep.cases[0].at("envelope_ok").get<int>() == 540);
}

TEST_CASE("verdict replays from the stored report") {
  auto rep = run_check("tail-kernel");
  const Json stored = rep.to_json(false);
  CHECK(replay_verdict(stored) == rep.verdict);
}

TEST_CASE("reports are deterministic for a fixed seed") {
  Json cfg;
  cfg["seed"] = 777;
  auto a = run_check("adversarial-q", cfg);
  auto b = run_check("adversarial-q", cfg);
  CHECK(a.to_json(false).dump() == b.to_json(false).dump());

  Json cfg2;
  cfg2["seed"] = 778;
  auto c = run_check("adversarial-q", cfg2);
  CHECK(a.to_json(false).dump() != c.to_json(false).dump());
}

TEST_CASE("refinement study") {
  CHECK_THROWS_AS(refinement_study("weak-strong-embed", Json::object(), 1),
                  std::invalid_argument);
  auto tr = refinement_study("weak-strong-embed", Json::object(), 2);
  CHECK(tr.levels == 2);
  CHECK(tr.monitored.size() >= 1);
  CHECK((tr.classification == "bounded" || tr.classification == "borderline"));
}

TEST_CASE("suite aggregation over a subset") {
  SuiteOptions opts;
  opts.only = {"infimum-lemma", "tail-kernel"};
  opts.out_dir = (fs::temp_directory_path() / "vex_suite_test").string();
  auto res = run_suite(opts);
  REQUIRE(res.reports.size() == 2);
  CHECK(res.exit_code == std::max(res.reports[0].exit_code(),
                                  res.reports[1].exit_code()));
  CHECK(fs::exists(fs::path(opts.out_dir) / "infimum-lemma.json"));
  CHECK(fs::exists(fs::path(opts.out_dir) / "summary.json"));
  fs::remove_all(opts.out_dir);
}

TEST_CASE("cli exit codes and outputs") {
  auto run = [](std::vector<const char*> args) {
    args.insert(args.begin(), "vexpot");
    return cli_main(static_cast<int>(args.size()), args.data());
  };

  CHECK(run({"definitely-not-a-subcommand"}) == 64);
  CHECK(run({"norm"}) == 64);  // missing required --config
  CHECK(run({"check", "no-such-id"}) == 64);

  const fs::path dir = fs::temp_directory_path() / "vex_cli_test";
  fs::remove_all(dir);
  CHECK(run({"check", "infimum-lemma", "--out", dir.c_str()}) == 0);
  CHECK(fs::exists(dir / "infimum-lemma.json"));

  CHECK(run({"example-fundamental", "--n", "3", "--p", "2.0", "--out",
             dir.c_str()}) == 0);
  CHECK(fs::exists(dir / "solution.csv"));
  std::ifstream csv(dir / "solution.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "r,u,grad_u");

  // field-op subcommand driven by a JSON config document
  const fs::path cfg_path = dir / "cfg.json";
  {
    std::ofstream cfg(cfg_path);
    cfg << R"({
      "domain": {"kind": "ball", "dim": 2, "center": [0,0], "radius": 1.0,
                 "resolution": 600, "inner_cutoff": 1e-3,
                 "representation": "radial"},
      "exponent": {"family": "constant", "value": 2.0},
      "field": {"family": "power", "exponent": 1.0}
    })";
  }
  CHECK(run({"weak-norm", "--config", cfg_path.c_str(), "--out",
             dir.c_str()}) == 0);
  CHECK(fs::exists(dir / "level_scan.csv"));
  CHECK(fs::exists(dir / "weak_norm.json"));

  CHECK(run({"suite", "--only", "infimum-lemma,tail-kernel", "--out",
             dir.c_str()}) == 0);
  CHECK(fs::exists(dir / "summary.json"));
  fs::remove_all(dir);
}
