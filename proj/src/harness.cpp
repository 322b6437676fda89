#include "vex/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "check_registry.hpp"

namespace vex {

namespace detail {

void absorb_status(std::string& verdict, const std::string& status) {
  if (status == "fail") {
    verdict = "fail";
  } else if (status == "borderline" && verdict == "pass") {
    verdict = "borderline";
  }
}

}  // namespace detail

Json VerificationReport::to_json(bool include_wall) const {
  Json j;
  j["id"] = id;
  j["config"] = config;
  j["verdict"] = verdict;
  j["cases"] = cases;
  j["refinement"] = refinement;
  if (include_wall) j["wall_ms"] = wall_ms;
  return j;
}

int VerificationReport::exit_code() const {
  if (verdict == "pass") return 0;
  if (verdict == "borderline") return 2;
  return 1;
}

const std::vector<std::string>& check_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& [id, def] : detail::check_registry()) v.push_back(id);
    return v;
  }();
  return ids;
}

Json default_config(const std::string& id) {
  const auto& reg = detail::check_registry();
  const auto it = reg.find(id);
  if (it == reg.end()) throw std::invalid_argument("unknown check id: " + id);
  return it->second.defaults;
}

VerificationReport run_check(const std::string& id, const Json& overrides) {
  const auto& reg = detail::check_registry();
  const auto it = reg.find(id);
  if (it == reg.end()) throw std::invalid_argument("unknown check id: " + id);

  VerificationReport rep;
  rep.id = id;
  rep.config = it->second.defaults;
  for (const auto& [k, v] : overrides.items()) {
    if (!rep.config.contains(k))
      throw std::invalid_argument("unknown config key '" + k + "' for check " + id);
    rep.config[k] = v;
  }

  const auto t0 = std::chrono::steady_clock::now();
  it->second.run(rep);
  rep.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();

  rep.verdict = replay_verdict(rep.to_json(false));
  return rep;
}

std::string replay_verdict(const Json& report) {
  std::string verdict = "pass";
  for (const auto& c : report.at("cases"))
    detail::absorb_status(verdict, c.at("status").get<std::string>());
  return verdict;
}

double fit_log2_slope(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) throw std::invalid_argument("slope fit needs at least two values");
  double xbar = 0.0, ybar = 0.0;
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = std::log2(std::max(values[i], 1e-300));
    xbar += static_cast<double>(i);
    ybar += y[i];
  }
  xbar /= n;
  ybar /= n;
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    num += (i - xbar) * (y[i] - ybar);
    den += (i - xbar) * (i - xbar);
  }
  return num / den;
}

std::string classify_slope(double slope) {
  if (std::abs(slope) < 0.15) return "bounded";
  if (slope >= 0.8) return "divergent";
  return "borderline";
}

TrendReport refinement_study(const std::string& id, const Json& config,
                             int levels) {
  if (levels < 2)
    throw std::invalid_argument("refinement study needs at least 2 levels");

  TrendReport tr;
  tr.id = id;
  // a failing deep level is recorded and the study continues shallower
  VerificationReport rep;
  for (int k = levels;; --k) {
    Json cfg = config;
    cfg["levels"] = k;
    try {
      rep = run_check(id, cfg);
      tr.levels = k;
      break;
    } catch (const std::exception& e) {
      tr.level_errors.push_back("levels=" + std::to_string(k) + ": " + e.what());
      if (k <= 2) throw;
    }
  }
  tr.monitored = Json::object();
  tr.slopes = Json::object();
  tr.classification = "bounded";
  for (const auto& c : rep.cases) {
    if (!c.contains("monitored")) continue;
    const std::string label = c.at("label").get<std::string>();
    tr.monitored[label] = c["monitored"];
    const auto vals = c["monitored"].get<std::vector<double>>();
    if (vals.size() >= 2) {
      const double s = fit_log2_slope(vals);
      tr.slopes[label] = s;
      const std::string cls = classify_slope(s);
      if (cls == "divergent" ||
          (cls == "borderline" && tr.classification == "bounded"))
        tr.classification = cls;
    }
    if (c.contains("level_errors"))
      for (const auto& e : c["level_errors"])
        tr.level_errors.push_back(e.get<std::string>());
  }
  return tr;
}

SuiteResult run_suite(const SuiteOptions& opts) {
  std::vector<std::string> ids = opts.only.empty() ? check_ids() : opts.only;
  for (const auto& id : ids)
    if (!detail::check_registry().count(id))
      throw std::invalid_argument("unknown check id: " + id);

  SuiteResult result;
  result.reports.resize(ids.size());

  const unsigned hw = std::thread::hardware_concurrency();
  const unsigned workers = std::min<std::size_t>(
      ids.size(),
      opts.threads > 0 ? static_cast<unsigned>(opts.threads) : std::max(1u, hw));

  std::atomic<std::size_t> next{0};
  std::vector<std::string> errors(ids.size());
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= ids.size()) return;
      Json cfg = opts.overrides;
      cfg["seed"] = opts.seed;
      try {
        result.reports[i] = run_check(ids[i], cfg);
      } catch (const std::exception& e) {
        result.reports[i].id = ids[i];
        result.reports[i].verdict = "fail";
        errors[i] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (!errors[i].empty()) {
      Json c;
      c["label"] = "runner-error";
      c["status"] = "fail";
      c["error"] = errors[i];
      result.reports[i].cases.push_back(c);
    }
    result.exit_code = std::max(result.exit_code, result.reports[i].exit_code());
  }

  if (!opts.out_dir.empty()) {
    namespace fs = std::filesystem;
    fs::create_directories(opts.out_dir);
    Json summary = Json::array();
    for (const auto& rep : result.reports) {
      std::ofstream f(fs::path(opts.out_dir) / (rep.id + ".json"));
      f << rep.to_json().dump(2) << "\n";
      Json s;
      s["id"] = rep.id;
      s["verdict"] = rep.verdict;
      s["wall_ms"] = rep.wall_ms;
      summary.push_back(s);
    }
    std::ofstream f(fs::path(opts.out_dir) / "summary.json");
    f << summary.dump(2) << "\n";
  }
  return result;
}

}  // namespace vex
