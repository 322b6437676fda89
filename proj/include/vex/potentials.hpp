#pragma once

#include <optional>
#include <span>
#include <vector>

#include "vex/fields.hpp"

namespace vex {

/// Nonnegative measure: an optional density field plus point atoms.
struct MeasureSpec {
  struct Atom {
    Point location{};
    double mass = 0.0;
  };
  std::optional<ScalarField> density;
  std::vector<Atom> atoms;
  int ambient_dim = 0;  // derived from the density grid when 0

  int dim() const;
  double total_mass() const;
};

enum class KernelConvention { AlphaAtX, AlphaAtY };

/// Riesz kernel |x-y|^{alpha-n} with the exponent taken at x or at y, and a
/// singular cutoff radius (defaults to two cell widths at the evaluation
/// point when unset).
struct KernelSpec {
  KernelConvention convention = KernelConvention::AlphaAtY;
  ExponentField alpha;
  std::optional<double> cutoff;
  int theta_per_decade = 48;  // radial-representation angular resolution
};

struct RadiusGrid {
  std::vector<double> r;
  static RadiusGrid log_spaced(double r_min, double r_max, int per_decade = 16,
                               int min_points = 8);
};

struct RatioStats {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  std::size_t count = 0;

  static RatioStats of(std::span<const double> values);
};

// Hardy-Littlewood maximal function: max over the radius grid of the ball
// average of |f| (full-ball normalization, f extended by zero off the domain).
double maximal(const ScalarField& f, const Point& x, const RadiusGrid& radii);

// |f| materialized through the maximal operator at every cell center.
ScalarField maximal_field(const ScalarField& f, const RadiusGrid& radii);

struct RieszValue {
  double value = 0.0;
  // Analytic bound sigma(n) eps^alpha / alpha on the excluded ball, scaled by
  // max|f| (lattice: the value excludes the ball and this bounds the error;
  // radial: the locally-constant correction f(x) sigma eps^alpha/alpha is
  // already added and this field reports its magnitude).
  double singular_bound = 0.0;
};

double riesz(const ScalarField& f, const KernelSpec& k, const Point& x);
RieszValue riesz_detailed(const ScalarField& f, const KernelSpec& k,
                          const Point& x);

// I f materialized at every cell center of f's grid.
ScalarField riesz_field(const ScalarField& f, const KernelSpec& k);

// max/min/mean over samples of riesz(alpha-at-x) / riesz(alpha-at-y).
RatioStats kernel_equivalence_check(const ScalarField& f,
                                    const ExponentField& alpha,
                                    std::span<const Point> samples,
                                    std::optional<double> cutoff = std::nullopt);

struct HedbergReport {
  RatioStats ratios;   // riesz / maximal^{1 - alpha p / n} per sample
  double sup = 0.0;
};

HedbergReport hedberg_check(const ScalarField& f, const ExponentField& p,
                            const ExponentField& alpha,
                            std::span<const Point> samples,
                            const RadiusGrid& radii);

double ball_mass(const MeasureSpec& mu, const Point& x, double r);
// mu(B(x, r_k)) for every radius of the grid, with shared precomputation.
std::vector<double> ball_mass_profile(const MeasureSpec& mu, const Point& x,
                                      std::span<const double> radii);

struct WolffResult {
  double value = 0.0;
  bool divergence_flag = false;  // mass at arbitrarily small radii around x
};

struct WolffSpec {
  double r_min = 0.0;        // defaults to the cell size at x
  int points_per_decade = 512;
};

WolffResult wolff(const MeasureSpec& mu, double alpha_x, double p_x,
                  const Point& x, double R, const WolffSpec& spec = {});

// Inner Havin-Maz'ya field riesz(f)^{1/(p-1)}, materialized once on the grid.
ScalarField havin_inner(const ScalarField& f, const ExponentField& alpha,
                        const ExponentField& p,
                        std::optional<double> cutoff = std::nullopt);

double havin_mazya(const ScalarField& f, const ExponentField& alpha,
                   const ExponentField& p, const Point& x,
                   std::optional<double> cutoff = std::nullopt);

struct WolffHavinReport {
  RatioStats ratios;  // wolff / havin per sample
  std::vector<double> wolff_values;
  std::vector<double> havin_values;
  bool domination = false;  // wolff <= C havin with C = ratios.max finite
};

WolffHavinReport wolff_vs_havin(const ScalarField& density,
                                const ExponentField& alpha,
                                const ExponentField& p,
                                std::span<const Point> samples, double R,
                                const WolffSpec& spec = {});

}  // namespace vex
