#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "vex/harness.hpp"
#include "vex/interpolation.hpp"
#include "vex/potentials.hpp"
#include "vex/radial_examples.hpp"

namespace vex {

namespace {

namespace fs = std::filesystem;

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  Json j;
  in >> j;
  return j;
}

Point parse_point(const std::string& s) {
  Point p{};
  std::stringstream ss(s);
  std::string tok;
  std::size_t i = 0;
  while (std::getline(ss, tok, ',') && i < 3) p[i++] = std::stod(tok);
  return p;
}

void write_text(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  std::ofstream out(path);
  out << text;
}

struct FieldSetup {
  GridPtr grid;
  ScalarField f;
  ExponentField p;
};

FieldSetup field_setup(const Json& cfg) {
  FieldSetup s;
  s.grid = grid_from_json(cfg.at("domain"));
  s.p = exponent_from_json(cfg.at("exponent")).instantiate(s.grid);
  s.f = field_from_json(cfg.at("field")).instantiate(s.grid);
  return s;
}

ScanSpec scan_from(const Json& cfg) {
  ScanSpec scan;
  if (cfg.contains("scan")) {
    const Json& j = cfg["scan"];
    scan.points = j.value("points", 200);
    if (j.contains("lambda_min")) scan.lambda_min = j["lambda_min"].get<double>();
    if (j.contains("lambda_max")) scan.lambda_max = j["lambda_max"].get<double>();
  }
  return scan;
}

int run_norm(const std::string& config, const std::string& out) {
  const Json cfg = load_json(config);
  FieldSetup s = field_setup(cfg);
  const NormResult r = luxemburg_norm(s.f, s.p, cfg.value("tol", 1e-8));
  std::cout << to_json(r).dump(2) << "\n";
  if (!out.empty()) {
    write_text(fs::path(out) / "norm.json", to_json(r).dump(2) + "\n");
    std::ostringstream csv;
    write_field_csv(csv, s.f);
    write_text(fs::path(out) / "field.csv", csv.str());
  }
  return 0;
}

int run_weak_norm(const std::string& config, const std::string& out) {
  const Json cfg = load_json(config);
  FieldSetup s = field_setup(cfg);
  const ScanSpec scan = scan_from(cfg);
  const NormResult r = weak_norm(s.f, s.p, scan);
  const LevelScan ls = weak_modular_sup(s.f, s.p, scan);
  Json j = to_json(r);
  j["modular_sup"] = to_json(ls, false);
  std::cout << j.dump(2) << "\n";
  if (!out.empty()) {
    write_text(fs::path(out) / "weak_norm.json", j.dump(2) + "\n");
    std::ostringstream csv;
    write_level_scan_csv(csv, ls);
    write_text(fs::path(out) / "level_scan.csv", csv.str());
  }
  return 0;
}

int run_riesz(const std::string& config, const std::string& x_arg,
              const std::string& out) {
  const Json cfg = load_json(config);
  FieldSetup s = field_setup(cfg);
  KernelSpec k{KernelConvention::AlphaAtY,
               exponent_from_json(cfg.at("alpha")).instantiate(s.grid)};
  if (cfg.value("convention", "alpha-at-y") == std::string("alpha-at-x"))
    k.convention = KernelConvention::AlphaAtX;
  if (cfg.contains("cutoff")) k.cutoff = cfg["cutoff"].get<double>();
  const RieszValue rv = riesz_detailed(s.f, k, parse_point(x_arg));
  Json j;
  j["value"] = rv.value;
  j["singular_bound"] = rv.singular_bound;
  std::cout << j.dump(2) << "\n";
  if (!out.empty()) write_text(fs::path(out) / "riesz.json", j.dump(2) + "\n");
  return 0;
}

int run_wolff(const std::string& config, const std::string& x_arg, double R,
              const std::string& out) {
  const Json cfg = load_json(config);
  FieldSetup s = field_setup(cfg);
  MeasureSpec mu;
  mu.density = s.f;
  WolffSpec spec;
  if (cfg.contains("wolff_points_per_decade"))
    spec.points_per_decade = cfg["wolff_points_per_decade"].get<int>();
  const Point x = parse_point(x_arg);
  const WolffResult w =
      wolff(mu, cfg.at("alpha_value").get<double>(),
            cfg.at("p_value").get<double>(), x, R, spec);
  Json j;
  j["value"] = w.value;
  j["divergence_flag"] = w.divergence_flag;
  std::cout << j.dump(2) << "\n";
  if (!out.empty()) write_text(fs::path(out) / "wolff.json", j.dump(2) + "\n");
  return 0;
}

int run_kfun(const std::string& config, double theta, const std::string& out) {
  const Json cfg = load_json(config);
  FieldSetup s = field_setup(cfg);
  const KProfile prof = theta_norm(s.f, s.p, theta);
  std::cout << to_json(prof, false).dump(2) << "\n";
  if (!out.empty()) {
    write_text(fs::path(out) / "kprofile.json", to_json(prof).dump(2) + "\n");
    std::ostringstream csv;
    write_kprofile_csv(csv, prof);
    write_text(fs::path(out) / "kprofile.csv", csv.str());
  }
  return 0;
}

int run_example_fundamental(int n, double p_const, const std::string& config,
                            double floor, const std::string& out) {
  ExponentFamily fam = ExponentFamily::constant(p_const);
  if (!config.empty()) fam = exponent_from_json(load_json(config).at("exponent"));
  QuadSpec quad;
  quad.r_floor = floor;
  const RadialSolution sol = fundamental_solution(fam, n, quad);
  Json j;
  j["dim"] = n;
  j["radii"] = sol.radii.size();
  j["u_at_floor"] = sol.u.front();
  j["u_threshold"] = n * (sol.p_at(0.0) - 1.0) / (n - sol.p_at(0.0));
  j["gradient_threshold"] = n * (sol.p_at(0.0) - 1.0) / (n - 1.0);
  std::cout << j.dump(2) << "\n";
  if (!out.empty()) {
    std::ostringstream csv;
    write_solution_csv(csv, sol);
    write_text(fs::path(out) / "solution.csv", csv.str());
    write_text(fs::path(out) / "solution.json", j.dump(2) + "\n");
  }
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"variable-exponent norms, potentials, and theorem checks"};
  app.require_subcommand(1);

  std::string config, out, x_arg = "0", only;
  double R = 2.0, theta = 0.5, floor = 1e-4, p_const = 2.0;
  int n = 3, threads = 0;
  std::uint64_t seed = 12345;

  auto* norm = app.add_subcommand("norm", "Luxemburg norm of a configured field");
  norm->add_option("--config", config)->required();
  norm->add_option("--out", out);

  auto* wnorm = app.add_subcommand("weak-norm", "weak norm and level scan");
  wnorm->add_option("--config", config)->required();
  wnorm->add_option("--out", out);

  auto* rz = app.add_subcommand("riesz", "Riesz potential at a point");
  rz->add_option("--config", config)->required();
  rz->add_option("--x", x_arg);
  rz->add_option("--out", out);

  auto* wf = app.add_subcommand("wolff", "truncated Wolff potential at a point");
  wf->add_option("--config", config)->required();
  wf->add_option("--x", x_arg);
  wf->add_option("--R", R);
  wf->add_option("--out", out);

  auto* kf = app.add_subcommand("kfun", "K-functional profile and theta-norm");
  kf->add_option("--config", config)->required();
  kf->add_option("--theta", theta);
  kf->add_option("--out", out);

  auto* ex = app.add_subcommand("example-fundamental",
                                "radial quasi-fundamental solution tables");
  ex->add_option("--n", n);
  ex->add_option("--p", p_const);
  ex->add_option("--config", config);
  ex->add_option("--floor", floor);
  ex->add_option("--out", out);

  std::string check_id;
  auto* ck = app.add_subcommand("check", "run one registered theorem check");
  ck->add_option("id", check_id)->required();
  ck->add_option("--config", config);
  ck->add_option("--out", out);
  ck->add_option("--seed", seed);

  auto* st = app.add_subcommand("suite", "run the full check suite");
  st->add_option("--only", only);
  st->add_option("--config", config);
  st->add_option("--out", out);
  st->add_option("--seed", seed);
  st->add_option("--threads", threads);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 64;
  }

  try {
    if (norm->parsed()) return run_norm(config, out);
    if (wnorm->parsed()) return run_weak_norm(config, out);
    if (rz->parsed()) return run_riesz(config, x_arg, out);
    if (wf->parsed()) return run_wolff(config, x_arg, R, out);
    if (kf->parsed()) return run_kfun(config, theta, out);
    if (ex->parsed())
      return run_example_fundamental(n, p_const, config, floor, out);

    if (ck->parsed()) {
      Json overrides = Json::object();
      if (!config.empty()) overrides = load_json(config);
      overrides["seed"] = seed;
      VerificationReport rep = run_check(check_id, overrides);
      std::cout << rep.verdict << "\n";
      if (!out.empty())
        write_text(fs::path(out) / (check_id + ".json"),
                   rep.to_json().dump(2) + "\n");
      return rep.exit_code();
    }

    if (st->parsed()) {
      SuiteOptions opts;
      opts.seed = seed;
      opts.threads = threads;
      opts.out_dir = out;
      if (!config.empty()) opts.overrides = load_json(config);
      if (!only.empty()) {
        std::stringstream ss(only);
        std::string tok;
        while (std::getline(ss, tok, ',')) opts.only.push_back(tok);
      }
      const SuiteResult res = run_suite(opts);
      for (const auto& rep : res.reports)
        std::cout << rep.id << ": " << rep.verdict << "\n";
      return res.exit_code;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 64;
  }
  return 64;
}

}  // namespace vex
