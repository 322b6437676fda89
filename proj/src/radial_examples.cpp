#include "vex/radial_examples.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vex {

namespace {

double integrand(const ExponentFamily& p, int n, double r) {
  const double pv = p.eval_radius(r);
  return std::pow(pv * std::pow(r, n - 1), -1.0 / (pv - 1.0));
}

// adaptive midpoint on [a, b] (log-spaced), doubling until the relative
// change drops below tol
double segment_quad(const std::function<double(double)>& f, double a, double b,
                    double tol) {
  if (!(b > a)) return 0.0;
  const double la = std::log(a), lb = std::log(b);
  double prev = 0.0;
  for (int cells = 4;; cells *= 2) {
    double sum = 0.0;
    double edge_prev = a;
    for (int i = 1; i <= cells; ++i) {
      const double edge = std::exp(la + (lb - la) * i / cells);
      sum += f(std::sqrt(edge_prev * edge)) * (edge - edge_prev);
      edge_prev = edge;
    }
    if (cells >= 8 &&
        std::abs(sum - prev) <= tol * (std::abs(sum) + 1e-300))
      return sum;
    if (cells > (1 << 20)) return sum;
    prev = sum;
  }
}

double threshold_of(const RadialSolution& sol, MembershipTarget target) {
  const int n = sol.dim;
  const double p0 = sol.p_at(0.0);
  return target == MembershipTarget::Solution
             ? n * (p0 - 1.0) / (n - p0)
             : n * (p0 - 1.0) / (n - 1.0);
}

}  // namespace

double RadialSolution::eval_u(double r) const {
  if (r >= 1.0) return 0.0;
  auto g = [this](double s) { return integrand(p, dim, s); };
  // nearest tabulated radius, then bridge the gap by quadrature
  const auto it = std::lower_bound(radii.begin(), radii.end(), r);
  std::size_t j = static_cast<std::size_t>(it - radii.begin());
  if (j == radii.size()) j = radii.size() - 1;
  if (j > 0 && std::abs(radii[j - 1] - r) < std::abs(radii[j] - r)) --j;
  const double rj = radii[j];
  if (r <= rj) return u[j] + segment_quad(g, r, rj, 1e-9);
  return u[j] - segment_quad(g, rj, r, 1e-9);
}

double RadialSolution::eval_grad(double r) const {
  return integrand(p, dim, r);
}

double RadialSolution::p_slope(double r) const {
  switch (p.kind) {
    case ExponentFamily::Kind::Constant:
      return 0.0;
    case ExponentFamily::Kind::Bump: {
      // d/dr [ b / log(e + 1/r) ]
      const double L = std::log(std::numbers::e + 1.0 / r);
      return p.bump_amp / ((std::numbers::e * r * r + r) * L * L);
    }
    case ExponentFamily::Kind::Affine: {
      const double v = p.offset + p.slope * r;
      return (v > p.clamp_lo && v < p.clamp_hi) ? p.slope : 0.0;
    }
    case ExponentFamily::Kind::RadialTable: {
      const double h = 1e-5;
      const double lo = std::max(r - h, 1e-12);
      return (p.eval_radius(r + h) - p.eval_radius(lo)) / (r + h - lo);
    }
  }
  return 0.0;
}

RadialSolution fundamental_solution(const ExponentFamily& p, int n,
                                    const QuadSpec& quad) {
  if (n < 2) throw std::invalid_argument("fundamental solution needs dim >= 2");
  // sample the family to enforce 1 < p^- <= p^+ < n
  for (int i = 0; i <= 1000; ++i) {
    const double r =
        quad.r_floor * std::pow(1.0 / quad.r_floor, i / 1000.0);
    const double pv = p.eval_radius(r);
    if (pv >= n) throw std::invalid_argument("exponent exceeds dimension");
    if (pv <= 1.0) throw std::invalid_argument("exponent must exceed 1");
  }

  RadialSolution sol;
  sol.p = p;
  sol.dim = n;
  const double decades = std::log10(1.0 / quad.r_floor);
  const int cells = std::max(
      32, static_cast<int>(std::ceil(decades * quad.cells_per_decade)));
  sol.grid = Grid::radial(Domain::ball(n, point(0, 0), 1.0, cells, quad.r_floor));
  sol.radii = sol.grid->radii();

  auto g = [&](double s) { return integrand(p, n, s); };
  const std::size_t m = sol.radii.size();
  sol.u.assign(m, 0.0);
  sol.grad.resize(m);
  for (std::size_t i = 0; i < m; ++i) sol.grad[i] = g(sol.radii[i]);

  // accumulate from the outer boundary inward
  double acc = segment_quad(g, sol.radii[m - 1], 1.0, quad.tol);
  sol.u[m - 1] = acc;
  for (std::size_t i = m - 1; i-- > 0;) {
    acc += segment_quad(g, sol.radii[i], sol.radii[i + 1], quad.tol);
    sol.u[i] = acc;
  }
  return sol;
}

AsymptoticsReport asymptotics_check(const RadialSolution& sol, double r_lo,
                                    double r_hi) {
  const int n = sol.dim;
  const double p0 = sol.p_at(0.0);
  const double gu = (n - p0) / (p0 - 1.0);
  const double gg = (n - 1.0) / (p0 - 1.0);

  AsymptoticsReport rep;
  std::vector<double> ur, gr;
  for (std::size_t i = 0; i < sol.radii.size(); ++i) {
    const double r = sol.radii[i];
    if (r < r_lo || r > r_hi) continue;
    ur.push_back(sol.u[i] * std::pow(r, gu));
    gr.push_back(sol.grad[i] * std::pow(r, gg));
  }
  rep.u_ratio = RatioStats::of(ur);
  rep.grad_ratio = RatioStats::of(gr);

  // band max/min as the lower end of the radius window shrinks by decades
  for (double lo = 1e-2; lo >= r_lo * (1.0 - 1e-12); lo /= 10.0) {
    double umin = 1e300, umax = 0.0, gmin = 1e300, gmax = 0.0;
    for (std::size_t i = 0; i < sol.radii.size(); ++i) {
      const double r = sol.radii[i];
      if (r < lo || r > r_hi) continue;
      const double a = sol.u[i] * std::pow(r, gu);
      const double b = sol.grad[i] * std::pow(r, gg);
      umin = std::min(umin, a);
      umax = std::max(umax, a);
      gmin = std::min(gmin, b);
      gmax = std::max(gmax, b);
    }
    rep.u_band.push_back(umax / umin);
    rep.grad_band.push_back(gmax / gmin);
  }
  return rep;
}

MembershipResult membership_scan(const RadialSolution& sol,
                                 const ExponentFamily& q,
                                 MembershipTarget target,
                                 const MembershipConfig& cfg) {
  if (cfg.eps_levels.size() < 3)
    throw std::invalid_argument("membership scan needs >= 3 refinement levels");

  MembershipResult res;
  res.threshold = threshold_of(sol, target);
  const double q0 = q.eval_radius(0.0);
  res.borderline = std::abs(q0 - res.threshold) < 0.05 * res.threshold;

  for (double eps : cfg.eps_levels) {
    QuadSpec quad;
    quad.r_floor = eps;
    quad.cells_per_decade = cfg.cells_per_decade;
    RadialSolution level = fundamental_solution(sol.p, sol.dim, quad);
    ScalarField f;
    f.grid = level.grid;
    f.values = target == MembershipTarget::Solution ? level.u : level.grad;
    ExponentField qf = q.instantiate(level.grid);
    ScanSpec scan;
    scan.points = cfg.scan_points;
    LevelScan ls = weak_modular_sup(f, qf, scan);
    res.sups.push_back(ls.sup_value);
    res.scans.push_back(std::move(ls));
  }

  bool divergent = false;
  for (std::size_t k = 0; k + 2 < res.sups.size(); ++k)
    if (res.sups[k] > 0.0 &&
        res.sups[k + 2] / res.sups[k] >= cfg.divergence_factor)
      divergent = true;
  res.verdict = divergent ? "non-member" : "member";
  return res;
}

double Regularization::eval_v(const RadialSolution& sol, double r) const {
  return r <= r_cut ? a - b * r : sol.eval_u(r);
}

double Regularization::eval_rhs(const RadialSolution& sol, int n,
                                double r) const {
  return std::pow(b, sol.p_at(r) - 1.0) *
         ((n - 1.0) / r + sol.p_slope(r) * std::log(b));
}

Regularization regularize(const RadialSolution& sol, double r_cut) {
  if (!(r_cut > 0.0 && r_cut < 1.0))
    throw std::invalid_argument("cutoff must lie in (0,1)");

  Regularization reg;
  reg.r_cut = r_cut;
  reg.b = sol.eval_grad(r_cut);
  reg.a = sol.eval_u(r_cut) + reg.b * r_cut;
  reg.c1_value_residual =
      std::abs((reg.a - reg.b * r_cut) - sol.eval_u(r_cut));
  reg.c1_slope_residual = std::abs(reg.b - sol.eval_grad(r_cut));

  const int n = sol.dim;
  for (std::size_t i = 0; i < sol.radii.size(); ++i) {
    const double r = sol.radii[i];
    if (r > r_cut) break;
    reg.rhs_radii.push_back(r);
    reg.rhs_values.push_back(reg.eval_rhs(sol, n, r));
    if (reg.rhs_values.back() < 0.0) reg.positivity_warning = true;
  }
  return reg;
}

L1Report l1_uniformity_check(const RadialSolution& sol,
                             std::span<const double> cutoffs) {
  const int n = sol.dim;
  const double sigma = sphere_area(n);

  L1Report rep;
  for (double r : cutoffs) {
    Regularization reg = regularize(sol, r);
    auto integrand_l1 = [&](double s) {
      return std::abs(reg.eval_rhs(sol, n, s)) * std::pow(s, n - 1);
    };
    rep.cutoffs.push_back(r);
    rep.masses.push_back(sigma *
                         segment_quad(integrand_l1, r * 1e-8, r, 1e-10));
  }
  const double lo = *std::min_element(rep.masses.begin(), rep.masses.end());
  const double hi = *std::max_element(rep.masses.begin(), rep.masses.end());
  rep.band = lo > 0.0 ? hi / lo : 0.0;

  // v_r increases to u pointwise as the cutoff shrinks
  rep.monotone_to_u = true;
  std::vector<double> sorted(cutoffs.begin(), cutoffs.end());
  std::sort(sorted.rbegin(), sorted.rend());
  for (double probe : {0.15, 0.5, 0.03, 0.008}) {
    double prev = -1e300;
    for (double r : sorted) {
      Regularization reg = regularize(sol, r);
      const double v = reg.eval_v(sol, probe);
      if (v < prev * (1.0 - 1e-12) - 1e-12) rep.monotone_to_u = false;
      if (v > sol.eval_u(probe) * (1.0 + 1e-9) + 1e-12)
        rep.monotone_to_u = false;
      prev = v;
    }
  }
  return rep;
}

}  // namespace vex
