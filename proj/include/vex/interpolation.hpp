#pragma once

#include <optional>
#include <span>
#include <vector>

#include "vex/fields.hpp"
#include "vex/spaces.hpp"

namespace vex {

/// K(t) profile for the pair (L^{p0(.)}, L^inf) and the derived (theta,inf)
/// norm sup_t t^{-theta} K(t).
struct KProfile {
  std::vector<double> t;
  std::vector<double> k;
  double theta = 0.0;
  double norm_value = 0.0;  // sub-grid refined around the grid argmax
  double argmax_t = 0.0;
};

struct TGridSpec {
  int per_decade = 40;
  double decades = 8.0;
  std::optional<double> center;  // auto-centered at the K transition if absent
};

// K(t, f; L^{p0(.)}, L^inf) via the optimal truncation decomposition
// f1 = min{f, s}: inf over s >= 0 of ||max{|f|-s, 0}||_{p0(.)} + t s,
// golden-section minimized (the objective is convex in s).
double k_functional_linf(const ScalarField& f, const ExponentField& p0,
                         double t);

KProfile theta_norm(const ScalarField& f, const ExponentField& p0, double theta,
                    const TGridSpec& grid = {});

struct InterpolationIdentityReport {
  std::vector<double> ratios;  // theta_norm / weak_norm per suite member
  double containment = 0.0;    // smallest C with every ratio in [1/C, C]
};

InterpolationIdentityReport interpolation_identity_check(
    std::span<const ScalarField> suite, const ExponentField& p, double theta,
    const ScanSpec& scan = {}, const TGridSpec& grid = {});

struct InfimumResult {
  double numeric = 0.0;  // golden-section minimum of (a/b) R^{-b} + t(R^a - d^a)
  double formula = 0.0;  // min{t^{b/(a+b)}, d^{-b}}
  double argmin = 0.0;
};

InfimumResult infimum_formula(double alpha, double beta, double delta, double t);

// Exact envelope for numeric/formula from the two minimization branches
// (interior stationary point vs the constrained endpoint).
std::pair<double, double> infimum_envelope(double alpha, double beta);

struct TailKernelSpec {
  int dim = 3;
  double alpha = 1.0;      // constant kernel order
  double delta = 0.1;      // excluded ball radius about the center
  double r_max = 1e3;      // quadrature truncation; analytic constant-exponent
                           // tail with p_inf beyond it
  double p_inf = 2.0;      // far-field exponent
  ExponentFamily p;        // radial exponent profile about the center
  int cells_per_decade = 256;
};

struct TailKernelResult {
  double lhs = 0.0;  // || |x-.|^{alpha-n} chi_{r>delta} ||_{p'(.)}
  double rhs = 0.0;  // |B(x,delta)|^{-1/(p^#_alpha)_B}
};

TailKernelResult tail_kernel_norm(const TailKernelSpec& spec);

}  // namespace vex
