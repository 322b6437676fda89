#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vex/geometry.hpp"

namespace vex {

/// Grid-sampled real function. Values live at the grid's cell centers; an
/// optional analytic evaluator supports off-grid evaluation. Radial tables
/// interpolate linearly in log-radius between samples and clamp at the ends.
struct ScalarField {
  GridPtr grid;
  std::vector<double> values;
  std::function<double(const Point&)> analytic;  // optional closed form

  double operator[](std::size_t i) const { return values[i]; }
  std::size_t size() const { return values.size(); }

  double eval(const Point& x) const;
  double eval_radius(double r) const;  // radial grids only

  double max_abs() const;
  double min_nonzero_abs() const;

  ScalarField map(const std::function<double(double)>& fn) const;

  static ScalarField from_function(GridPtr g,
                                   std::function<double(const Point&)> fn);
  static ScalarField from_radial_function(GridPtr g,
                                          std::function<double(double)> fn);
  static ScalarField constant(GridPtr g, double c);
};

/// Variable exponent over a grid, with declared bounds and optional declared
/// log-Holder constant. Construction validates that all samples lie inside
/// the declared bounds.
struct ExponentField {
  ScalarField field;
  double declared_lo = 0.0;
  double declared_hi = 0.0;
  std::optional<double> declared_log_holder;

  double operator[](std::size_t i) const { return field.values[i]; }
  double eval(const Point& x) const { return field.eval(x); }
  double eval_radius(double r) const { return field.eval_radius(r); }
  const GridPtr& grid() const { return field.grid; }

  static ExponentField make(ScalarField f, double lo, double hi,
                            std::optional<double> log_holder = std::nullopt);
  // Bounds taken from the sample scan (widened by a relative epsilon).
  static ExponentField from_samples(ScalarField f,
                                    std::optional<double> log_holder = std::nullopt);
};

/// The closed set of exponent configurations (no expression parser):
/// constant, affine in x1 clamped to bounds, the canonical log-Holder bump
/// p0 + b/log(e + 1/|x-x0|), and a radial piecewise-linear table.
struct ExponentFamily {
  enum class Kind { Constant, Affine, Bump, RadialTable };
  Kind kind = Kind::Constant;

  double value = 2.0;                  // Constant
  double offset = 2.0, slope = 0.0;    // Affine: offset + slope*x1
  double clamp_lo = 1.0, clamp_hi = 1e9;
  double bump_base = 2.0, bump_amp = 0.0;  // Bump: p0 + b/log(e+1/|x-x0|)
  Point bump_center{};
  std::vector<double> radii, table;    // RadialTable

  static ExponentFamily constant(double c);
  static ExponentFamily affine(double offset, double slope, double lo, double hi);
  static ExponentFamily bump(double p0, double b, Point x0 = {});
  static ExponentFamily radial_table(std::vector<double> radii,
                                     std::vector<double> values);

  double eval(const Point& x, int dim) const;
  double eval_radius(double r) const;
  ExponentField instantiate(const GridPtr& g) const;
};

/// Test-field configurations used by the verification suites.
struct FieldFamily {
  enum class Kind {
    Constant,
    IndicatorBall,
    IndicatorAnnulus,
    Power,       // amp * |x-x0|^{-exponent}
    SmoothBump,  // amp * exp(-|x-x0|^2 / (2 width^2))
    Random       // per-cell uniform [0, amp], seeded
  };
  Kind kind = Kind::Constant;
  double amp = 1.0;
  double exponent = 0.0;
  double width = 0.25;
  double inner = 0.0, outer = 1.0;  // indicator radii
  Point center{};
  std::uint64_t seed = 1;

  ScalarField instantiate(const GridPtr& g) const;
  std::string label() const;
};

// ---- exponent calculus ----------------------------------------------------

// Sampled min/max over a cell subset (whole domain if omitted).
std::pair<double, double> ess_bounds(const ExponentField& g,
                                     std::span<const std::size_t> cells);
std::pair<double, double> ess_bounds(const ExponentField& g);
// Bounds over cells whose centers lie in the ball; throws if none do.
std::pair<double, double> ess_bounds(const ExponentField& g, const Ball& b);

// Harmonic mean (mean of 1/p)^{-1} over the cells inside the ball.
double harmonic_mean(const ExponentField& p, const Ball& b);

double sobolev_conjugate(double p, double alpha, int n);
double sobolev_conjugate(const ExponentField& p, const ExponentField& alpha,
                         const Point& x);

double holder_conjugate(double p);
double holder_conjugate(const ExponentField& p, const Point& x);

// Largest |g(x)-g(y)| * log(e + 1/|x-y|) over `pairs` seeded random cell
// pairs, augmented with pairs against the extreme cells of g.
double log_holder_modulus(const ExponentField& g, std::size_t pairs,
                          std::uint64_t seed = 1234);

// max over balls of |B|^{g^-_B - g^+_B}, |B| being the ball's own measure.
double oscillation_check(const ExponentField& g, std::span<const Ball> balls);

}  // namespace vex
