#pragma once

#include <string>
#include <vector>

#include "vex/fields.hpp"
#include "vex/potentials.hpp"
#include "vex/spaces.hpp"

namespace vex {

struct QuadSpec {
  double r_floor = 1e-4;      // tabulation floor
  int cells_per_decade = 256;
  double tol = 1e-8;          // per-segment adaptive midpoint tolerance
};

/// Radial quasi-fundamental solution on the unit ball:
/// u(r) = int_r^1 (p(s) s^{n-1})^{-1/(p(s)-1)} ds, with the exact gradient
/// magnitude |grad u|(r) = (p(r) r^{n-1})^{-1/(p(r)-1)}.
struct RadialSolution {
  ExponentFamily p;
  int dim = 3;
  GridPtr grid;               // radial grid over [r_floor, 1]
  std::vector<double> radii;  // grid cell centers
  std::vector<double> u;
  std::vector<double> grad;

  double eval_u(double r) const;     // integrates from the nearest table entry
  double eval_grad(double r) const;  // exact formula, no quadrature
  double p_at(double r) const { return p.eval_radius(r); }
  double p_slope(double r) const;    // radial derivative of the exponent
};

RadialSolution fundamental_solution(const ExponentFamily& p, int n,
                                    const QuadSpec& quad = {});

struct AsymptoticsReport {
  RatioStats u_ratio;     // u(r) / r^{-(n-p(0))/(p(0)-1)}
  RatioStats grad_ratio;  // |grad u|(r) / r^{-(n-1)/(p(0)-1)}
  // max/min ratio band per lower decade of r: stability as radii shrink
  std::vector<double> u_band, grad_band;
};

AsymptoticsReport asymptotics_check(const RadialSolution& sol,
                                    double r_lo = 1e-4, double r_hi = 1e-1);

enum class MembershipTarget { Solution, Gradient };

struct MembershipConfig {
  std::vector<double> eps_levels = {1e-2, 1e-4, 1e-6};
  int cells_per_decade = 256;
  int scan_points = 200;
  double divergence_factor = 2.0;  // across two consecutive refinements
};

struct MembershipResult {
  std::vector<double> sups;      // weak modular sup per refinement level
  std::vector<LevelScan> scans;  // full scans, for the report files
  std::string verdict;           // "member" or "non-member"
  bool borderline = false;       // q(0) strictly within 5% of the threshold
  double threshold = 0.0;        // n(p(0)-1)/(n-p(0)) resp. n(p(0)-1)/(n-1)
};

MembershipResult membership_scan(const RadialSolution& sol,
                                 const ExponentFamily& q,
                                 MembershipTarget target,
                                 const MembershipConfig& cfg = {});

/// C^1 linear cap v_r = a - b|x| on B(0,r), u outside, with the matched
/// right-hand side of the divergence-form operator.
struct Regularization {
  double r_cut = 0.0;
  double a = 0.0;  // u(r) + b r
  double b = 0.0;  // |grad u|(r)
  std::vector<double> rhs_radii;
  std::vector<double> rhs_values;  // b^{p-1} ((n-1)/r + p'(r) log b)
  bool positivity_warning = false;
  double c1_value_residual = 0.0;
  double c1_slope_residual = 0.0;

  double eval_v(const RadialSolution& sol, double r) const;
  double eval_rhs(const RadialSolution& sol, int n, double r) const;
};

Regularization regularize(const RadialSolution& sol, double r_cut);

struct L1Report {
  std::vector<double> cutoffs;
  std::vector<double> masses;      // ||rhs||_{L^1(B(0,r))} per cutoff
  double band = 0.0;               // max/min of the masses
  bool monotone_to_u = false;      // v_r increases to u at probe radii
};

L1Report l1_uniformity_check(const RadialSolution& sol,
                             std::span<const double> cutoffs);

}  // namespace vex
