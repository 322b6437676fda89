#include "vex/fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "vex/rng.hpp"

namespace vex {

namespace {

double interp_log_radius(const std::vector<double>& radii,
                         const std::vector<double>& values, double r) {
  if (r <= radii.front()) return values.front();
  if (r >= radii.back()) return values.back();
  auto it = std::upper_bound(radii.begin(), radii.end(), r);
  const std::size_t k = static_cast<std::size_t>(it - radii.begin());
  const double t = (std::log(r) - std::log(radii[k - 1])) /
                   (std::log(radii[k]) - std::log(radii[k - 1]));
  return values[k - 1] + t * (values[k] - values[k - 1]);
}

}  // namespace

double ScalarField::eval(const Point& x) const {
  if (analytic) return analytic(x);
  if (grid->is_radial()) return eval_radius(norm(x, grid->dim()));
  throw std::invalid_argument("lattice field has no off-grid evaluator");
}

double ScalarField::eval_radius(double r) const {
  if (!grid->is_radial())
    throw std::invalid_argument("eval_radius requires a radial grid");
  if (analytic) return analytic(point(r));
  return interp_log_radius(grid->radii(), values, r);
}

double ScalarField::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

double ScalarField::min_nonzero_abs() const {
  double m = std::numeric_limits<double>::infinity();
  for (double v : values)
    if (v != 0.0) m = std::min(m, std::abs(v));
  return m;
}

ScalarField ScalarField::map(const std::function<double(double)>& fn) const {
  ScalarField out;
  out.grid = grid;
  out.values.resize(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out.values[i] = fn(values[i]);
  return out;
}

ScalarField ScalarField::from_function(GridPtr g,
                                       std::function<double(const Point&)> fn) {
  ScalarField f;
  f.grid = g;
  f.values.resize(g->cells());
  for (std::size_t i = 0; i < f.values.size(); ++i) f.values[i] = fn(g->center(i));
  f.analytic = std::move(fn);
  return f;
}

ScalarField ScalarField::from_radial_function(GridPtr g,
                                              std::function<double(double)> fn) {
  if (!g->is_radial())
    throw std::invalid_argument("from_radial_function requires a radial grid");
  ScalarField f;
  f.grid = g;
  f.values.resize(g->cells());
  for (std::size_t i = 0; i < f.values.size(); ++i) f.values[i] = fn(g->radii()[i]);
  f.analytic = [fn, d = g->dim()](const Point& x) { return fn(norm(x, d)); };
  return f;
}

ScalarField ScalarField::constant(GridPtr g, double c) {
  ScalarField f;
  f.grid = g;
  f.values.assign(g->cells(), c);
  f.analytic = [c](const Point&) { return c; };
  return f;
}

ExponentField ExponentField::make(ScalarField f, double lo, double hi,
                                  std::optional<double> log_holder) {
  if (!(lo > 0.0) || !(lo <= hi))
    throw std::invalid_argument("exponent bounds must satisfy 0 < lo <= hi");
  for (double v : f.values)
    if (v < lo || v > hi)
      throw std::invalid_argument("exponent sample outside declared bounds");
  ExponentField e;
  e.field = std::move(f);
  e.declared_lo = lo;
  e.declared_hi = hi;
  e.declared_log_holder = log_holder;
  return e;
}

ExponentField ExponentField::from_samples(ScalarField f,
                                          std::optional<double> log_holder) {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (double v : f.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double pad = 1e-12 * std::max(1.0, hi);
  return make(std::move(f), lo - pad > 0 ? lo - pad : lo, hi + pad, log_holder);
}

ExponentFamily ExponentFamily::constant(double c) {
  ExponentFamily f;
  f.kind = Kind::Constant;
  f.value = c;
  return f;
}

ExponentFamily ExponentFamily::affine(double offset, double slope, double lo,
                                      double hi) {
  ExponentFamily f;
  f.kind = Kind::Affine;
  f.offset = offset;
  f.slope = slope;
  f.clamp_lo = lo;
  f.clamp_hi = hi;
  return f;
}

ExponentFamily ExponentFamily::bump(double p0, double b, Point x0) {
  ExponentFamily f;
  f.kind = Kind::Bump;
  f.bump_base = p0;
  f.bump_amp = b;
  f.bump_center = x0;
  return f;
}

ExponentFamily ExponentFamily::radial_table(std::vector<double> radii,
                                            std::vector<double> values) {
  if (radii.size() != values.size() || radii.size() < 2)
    throw std::invalid_argument("radial table needs matching radii/values, size >= 2");
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (!(radii[i] > radii[i - 1]))
      throw std::invalid_argument("radial table radii must be strictly increasing");
  ExponentFamily f;
  f.kind = Kind::RadialTable;
  f.radii = std::move(radii);
  f.table = std::move(values);
  return f;
}

double ExponentFamily::eval(const Point& x, int dim) const {
  switch (kind) {
    case Kind::Constant:
      return value;
    case Kind::Affine:
      return std::clamp(offset + slope * x[0], clamp_lo, clamp_hi);
    case Kind::Bump: {
      const double d = distance(x, bump_center, dim);
      return bump_base + bump_amp / std::log(std::numbers::e + 1.0 / d);
    }
    case Kind::RadialTable:
      return interp_log_radius(radii, table, norm(x, dim));
  }
  return value;
}

double ExponentFamily::eval_radius(double r) const {
  return eval(point(r), 3);
}

ExponentField ExponentFamily::instantiate(const GridPtr& g) const {
  auto field = ScalarField::from_function(
      g, [fam = *this, dim = g->dim()](const Point& x) { return fam.eval(x, dim); });
  std::optional<double> lh;
  switch (kind) {
    case Kind::Constant:
      lh = 0.0;
      break;
    case Kind::Bump:
      lh = std::abs(bump_amp);  // the family's modulus, by construction
      break;
    default:
      break;
  }
  return ExponentField::from_samples(std::move(field), lh);
}

ScalarField FieldFamily::instantiate(const GridPtr& g) const {
  const int dim = g->dim();
  switch (kind) {
    case Kind::Constant:
      return ScalarField::constant(g, amp);
    case Kind::IndicatorBall:
      return ScalarField::from_function(g, [*this, dim](const Point& x) {
        return distance(x, center, dim) < outer ? amp : 0.0;
      });
    case Kind::IndicatorAnnulus:
      return ScalarField::from_function(g, [*this, dim](const Point& x) {
        const double d = distance(x, center, dim);
        return (d >= inner && d < outer) ? amp : 0.0;
      });
    case Kind::Power:
      return ScalarField::from_function(g, [*this, dim](const Point& x) {
        const double d = distance(x, center, dim);
        return d > 0.0 ? amp * std::pow(d, -exponent)
                       : std::numeric_limits<double>::infinity();
      });
    case Kind::SmoothBump:
      return ScalarField::from_function(g, [*this, dim](const Point& x) {
        const double d = distance(x, center, dim);
        return amp * std::exp(-0.5 * d * d / (width * width));
      });
    case Kind::Random: {
      ScalarField f;
      f.grid = g;
      f.values.resize(g->cells());
      Rng rng(seed);
      for (double& v : f.values) v = amp * rng.uniform();
      return f;
    }
  }
  return ScalarField::constant(g, 0.0);
}

std::string FieldFamily::label() const {
  switch (kind) {
    case Kind::Constant: return "constant";
    case Kind::IndicatorBall: return "indicator-ball";
    case Kind::IndicatorAnnulus: return "indicator-annulus";
    case Kind::Power: return "power";
    case Kind::SmoothBump: return "smooth-bump";
    case Kind::Random: return "random";
  }
  return "?";
}

// ---- exponent calculus ----------------------------------------------------

std::pair<double, double> ess_bounds(const ExponentField& g,
                                     std::span<const std::size_t> cells) {
  if (cells.empty()) throw std::invalid_argument("empty set");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i : cells) {
    const double v = g[i];
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

std::pair<double, double> ess_bounds(const ExponentField& g) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double v : g.field.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (!(lo <= hi)) throw std::invalid_argument("empty set");
  return {lo, hi};
}

namespace {

// weight of cell i inside the ball: lattice cells count fully by their
// center; radial shells count by the sphere/ball overlap fraction (exact for
// fields constant on spheres)
double ball_weight(const Grid& grid, std::size_t i, const Ball& b) {
  if (!grid.is_radial())
    return distance(grid.center(i), b.center, grid.dim()) < b.radius ? 1.0 : 0.0;
  return sphere_ball_overlap(grid.dim(), grid.radii()[i],
                             norm(b.center, grid.dim()), b.radius);
}

}  // namespace

std::pair<double, double> ess_bounds(const ExponentField& g, const Ball& b) {
  const Grid& grid = *g.grid();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  bool any = false;
  for (std::size_t i = 0; i < grid.cells(); ++i) {
    if (ball_weight(grid, i, b) <= 0.0) continue;
    const double v = g[i];
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    any = true;
  }
  if (!any) throw std::invalid_argument("empty set");
  return {lo, hi};
}

double harmonic_mean(const ExponentField& p, const Ball& b) {
  const Grid& grid = *p.grid();
  double mass = 0.0, vol = 0.0;
  for (std::size_t i = 0; i < grid.cells(); ++i) {
    const double w = ball_weight(grid, i, b) * grid.volume(i);
    if (w <= 0.0) continue;
    mass += w / p[i];
    vol += w;
  }
  if (vol == 0.0) throw std::invalid_argument("ball disjoint from domain");
  return vol / mass;
}

double sobolev_conjugate(double p, double alpha, int n) {
  if (alpha * p >= n) throw std::invalid_argument("supercritical exponent");
  return n * p / (n - alpha * p);
}

double sobolev_conjugate(const ExponentField& p, const ExponentField& alpha,
                         const Point& x) {
  return sobolev_conjugate(p.eval(x), alpha.eval(x), p.grid()->dim());
}

double holder_conjugate(double p) {
  if (!(p > 1.0)) throw std::invalid_argument("conjugate requires p > 1");
  return p / (p - 1.0);
}

double holder_conjugate(const ExponentField& p, const Point& x) {
  return holder_conjugate(p.eval(x));
}

namespace {
double pair_modulus(const Grid& grid, const ExponentField& g, std::size_t i,
                    std::size_t j) {
  if (i == j) return 0.0;
  const double d = distance(grid.center(i), grid.center(j), grid.dim());
  if (d == 0.0) return 0.0;
  return std::abs(g[i] - g[j]) * std::log(std::numbers::e + 1.0 / d);
}
}  // namespace

double log_holder_modulus(const ExponentField& g, std::size_t pairs,
                          std::uint64_t seed) {
  const Grid& grid = *g.grid();
  const std::size_t n = grid.cells();
  if (n < 2) throw std::invalid_argument("need at least two cells");

  std::size_t imin = 0, imax = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (g[i] < g[imin]) imin = i;
    if (g[i] > g[imax]) imax = i;
  }

  Rng rng(seed);
  double c = 0.0;
  for (std::size_t k = 0; k < pairs; ++k) {
    const std::size_t i = rng.below(n);
    const std::size_t j = rng.below(n);
    c = std::max(c, pair_modulus(grid, g, i, j));
    // extreme-value anchors sharpen the estimate at no extra sampling cost
    c = std::max(c, pair_modulus(grid, g, i, imin));
    c = std::max(c, pair_modulus(grid, g, i, imax));
  }
  c = std::max(c, pair_modulus(grid, g, imin, imax));
  return c;
}

double oscillation_check(const ExponentField& g, std::span<const Ball> balls) {
  const int n = g.grid()->dim();
  double worst = 0.0;
  for (const Ball& b : balls) {
    double lo, hi;
    try {
      std::tie(lo, hi) = ess_bounds(g, b);
    } catch (const std::invalid_argument&) {
      lo = hi = 1.0;  // no sampled oscillation -> factor 1
    }
    const double measure = ball_volume(n) * std::pow(b.radius, n);
    worst = std::max(worst, std::pow(measure, lo - hi));
  }
  return worst;
}

}  // namespace vex
