#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vex/io.hpp"

namespace vex {

struct VerificationReport {
  std::string id;
  Json config;
  Json cases = Json::array();
  Json refinement;
  std::string verdict = "pass";  // pass | fail | borderline
  double wall_ms = 0.0;

  Json to_json(bool include_wall = true) const;
  int exit_code() const;  // 0 pass, 1 fail, 2 borderline
};

const std::vector<std::string>& check_ids();
Json default_config(const std::string& id);

// Runs the registered checker with defaults overlaid by `overrides` (shallow
// key merge). The verdict is a pure function of the recorded data and the
// slope policy below.
VerificationReport run_check(const std::string& id,
                             const Json& overrides = Json::object());

// Re-derives the verdict from a stored report's recorded data (verdict
// reproducibility: no recomputation of the underlying quantities).
std::string replay_verdict(const Json& report);

// ---- refinement policy -----------------------------------------------------

// Least-squares slope of log2(values) per refinement level (levels are
// geometric in resolution, so this is "per doubling/decade step").
double fit_log2_slope(std::span<const double> values);

// bounded: |slope| < 0.15; divergent: slope >= 0.8; otherwise borderline.
std::string classify_slope(double slope);

struct TrendReport {
  std::string id;
  int levels = 0;
  Json monitored;  // per-case value arrays across levels
  Json slopes;
  std::string classification;  // worst case over the monitored set
  std::vector<std::string> level_errors;
};

TrendReport refinement_study(const std::string& id, const Json& config,
                             int levels);

// ---- suite -----------------------------------------------------------------

struct SuiteOptions {
  std::vector<std::string> only;  // empty = all checks
  std::uint64_t seed = 12345;
  int threads = 0;  // 0 = hardware concurrency
  std::string out_dir;
  Json overrides = Json::object();
};

struct SuiteResult {
  std::vector<VerificationReport> reports;
  int exit_code = 0;  // max of the individual exit codes
};

SuiteResult run_suite(const SuiteOptions& opts);

int cli_main(int argc, const char* const* argv);

}  // namespace vex
