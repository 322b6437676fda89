#include "vex/io.hpp"

#include <cstdio>
#include <stdexcept>

namespace vex {

namespace {

Point point_from_json(const Json& j) {
  Point p{};
  if (!j.is_array() || j.size() > 3)
    throw std::invalid_argument("points are arrays of up to 3 coordinates");
  for (std::size_t i = 0; i < j.size(); ++i) p[i] = j[i].get<double>();
  return p;
}

std::string csv_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Domain domain_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const int dim = j.at("dim").get<int>();
  const int res = j.at("resolution").get<int>();
  Domain d;
  if (kind == "box") {
    d = Domain::box(dim, point_from_json(j.at("lo")), point_from_json(j.at("hi")),
                    res);
  } else if (kind == "ball") {
    d = Domain::ball(dim, point_from_json(j.value("center", Json::array())),
                     j.at("radius").get<double>(), res,
                     j.value("inner_cutoff", 0.0));
  } else {
    throw std::invalid_argument("domain kind must be 'box' or 'ball'");
  }
  if (j.contains("inner_cutoff")) d.inner_cutoff = j["inner_cutoff"].get<double>();
  if (j.contains("singular_point"))
    d.singular_point = point_from_json(j["singular_point"]);
  return d;
}

GridPtr grid_from_json(const Json& j) {
  const Domain d = domain_from_json(j);
  const std::string rep = j.value("representation", "lattice");
  if (rep == "radial") return Grid::radial(d);
  if (rep == "lattice") return Grid::lattice(d);
  throw std::invalid_argument("representation must be 'lattice' or 'radial'");
}

ExponentFamily exponent_from_json(const Json& j) {
  const std::string fam = j.at("family").get<std::string>();
  if (fam == "constant") return ExponentFamily::constant(j.at("value").get<double>());
  if (fam == "affine")
    return ExponentFamily::affine(j.at("offset").get<double>(),
                                  j.at("slope").get<double>(),
                                  j.at("lo").get<double>(),
                                  j.at("hi").get<double>());
  if (fam == "bump")
    return ExponentFamily::bump(j.at("p0").get<double>(), j.at("b").get<double>(),
                                point_from_json(j.value("x0", Json::array())));
  if (fam == "radial-table")
    return ExponentFamily::radial_table(j.at("radii").get<std::vector<double>>(),
                                        j.at("values").get<std::vector<double>>());
  throw std::invalid_argument("unknown exponent family: " + fam);
}

FieldFamily field_from_json(const Json& j) {
  const std::string fam = j.at("family").get<std::string>();
  FieldFamily f;
  if (fam == "constant") {
    f.kind = FieldFamily::Kind::Constant;
  } else if (fam == "indicator-ball") {
    f.kind = FieldFamily::Kind::IndicatorBall;
  } else if (fam == "indicator-annulus") {
    f.kind = FieldFamily::Kind::IndicatorAnnulus;
  } else if (fam == "power") {
    f.kind = FieldFamily::Kind::Power;
  } else if (fam == "smooth-bump") {
    f.kind = FieldFamily::Kind::SmoothBump;
  } else if (fam == "random") {
    f.kind = FieldFamily::Kind::Random;
  } else {
    throw std::invalid_argument("unknown field family: " + fam);
  }
  f.amp = j.value("amp", 1.0);
  f.exponent = j.value("exponent", 0.0);
  f.width = j.value("width", 0.25);
  f.inner = j.value("inner", 0.0);
  f.outer = j.value("outer", 1.0);
  if (j.contains("center")) f.center = point_from_json(j["center"]);
  f.seed = j.value("seed", 1ull);
  return f;
}

Json to_json(const NormResult& r) {
  Json j;
  j["value"] = r.value;
  j["method"] = to_string(r.method);
  j["residual"] = r.residual;
  return j;
}

Json to_json(const RatioStats& s) {
  Json j;
  j["min"] = s.min;
  j["max"] = s.max;
  j["mean"] = s.mean;
  j["count"] = s.count;
  return j;
}

Json to_json(const LevelScan& s, bool include_scan) {
  Json j;
  j["sup_value"] = s.sup_value;
  j["argmax_lambda"] = s.argmax_lambda;
  if (include_scan) {
    j["lambdas"] = s.lambdas;
    j["modular_values"] = s.modular_values;
  }
  return j;
}

Json to_json(const KProfile& p, bool include_profile) {
  Json j;
  j["theta"] = p.theta;
  j["norm_value"] = p.norm_value;
  j["argmax_t"] = p.argmax_t;
  if (include_profile) {
    j["t"] = p.t;
    j["k"] = p.k;
  }
  return j;
}

void write_field_csv(std::ostream& os, const ScalarField& f) {
  const Grid& g = *f.grid;
  const int n = g.is_radial() ? 1 : g.dim();
  for (int a = 1; a <= n; ++a) os << "x" << a << ",";
  os << "value\n";
  for (std::size_t i = 0; i < g.cells(); ++i) {
    const Point c = g.center(i);
    for (int a = 0; a < n; ++a) os << csv_num(c[a]) << ",";
    os << csv_num(f[i]) << "\n";
  }
}

void write_level_scan_csv(std::ostream& os, const LevelScan& s) {
  os << "lambda,modular_value\n";
  for (std::size_t i = 0; i < s.lambdas.size(); ++i)
    os << csv_num(s.lambdas[i]) << "," << csv_num(s.modular_values[i]) << "\n";
}

void write_kprofile_csv(std::ostream& os, const KProfile& p) {
  os << "t,K,t_pow_neg_theta_K\n";
  for (std::size_t i = 0; i < p.t.size(); ++i)
    os << csv_num(p.t[i]) << "," << csv_num(p.k[i]) << ","
       << csv_num(std::pow(p.t[i], -p.theta) * p.k[i]) << "\n";
}

void write_solution_csv(std::ostream& os, const RadialSolution& sol) {
  os << "r,u,grad_u\n";
  for (std::size_t i = 0; i < sol.radii.size(); ++i)
    os << csv_num(sol.radii[i]) << "," << csv_num(sol.u[i]) << ","
       << csv_num(sol.grad[i]) << "\n";
}

}  // namespace vex
