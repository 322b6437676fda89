#include "vex/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace vex {

namespace {

constexpr double kInvPhi = 0.6180339887498949;

// Luxemburg norm of max{|f| - s, 0}, bisected with a warm upper bracket
// (norms are nonincreasing in s).
double truncated_norm(const ScalarField& f, const ExponentField& p, double s,
                      double hi_hint) {
  const Grid& g = *f.grid;
  struct Cell {
    double v, p, vol;
  };
  std::vector<Cell> act;
  act.reserve(g.cells());
  for (std::size_t i = 0; i < g.cells(); ++i) {
    const double v = std::abs(f[i]) - s;
    if (v > 0.0) act.push_back({v, p[i], g.volume(i)});
  }
  if (act.empty()) return 0.0;
  auto rho = [&](double lam) {
    double sum = 0.0;
    for (const Cell& c : act) sum += std::pow(c.v / lam, c.p) * c.vol;
    return sum;
  };

  double hi = std::max(hi_hint, 1e-12) * 1.0001;
  double rho_hi = rho(hi);
  int guard = 0;
  while (rho_hi > 1.0) {
    hi *= 4.0;
    rho_hi = rho(hi);
    if (++guard > 600)
      throw std::runtime_error("truncated norm bracket extension failed");
  }
  double lo = hi, rho_lo = rho_hi;
  guard = 0;
  while (rho_lo < 1.0) {
    lo *= 0.5;
    rho_lo = rho(lo);
    if (lo < 1e-300) return 0.0;
    if (++guard > 2000) break;
  }

  // Illinois iteration on log rho vs log lambda (near-linear for power-type
  // modulars), with the bracket maintained throughout
  double ulo = std::log(lo), uhi = std::log(hi);
  double flo = std::log(rho_lo), fhi = std::log(rho_hi);
  double mid = hi;
  for (int it = 0; it < 100; ++it) {
    double u = (flo - fhi) > 0.0 ? (ulo * (-fhi) + uhi * flo) / (flo - fhi)
                                 : 0.5 * (ulo + uhi);
    if (!(u > ulo && u < uhi)) u = 0.5 * (ulo + uhi);
    mid = std::exp(u);
    const double r = rho(mid);
    if (std::abs(r - 1.0) <= 1e-9) {
      if (r <= 1.0) return mid;
      // keep the returned value on the rho <= 1 side of the root
      ulo = u;
      flo = std::log(r);
      continue;
    }
    if (r > 1.0) {
      ulo = u;
      flo = std::log(r);
      fhi *= 0.5;  // Illinois weighting against stagnation
    } else {
      uhi = u;
      fhi = std::log(r);
      flo *= 0.5;
    }
  }
  return std::exp(uhi);
}

struct GoldenResult {
  double arg = 0.0;
  double value = 0.0;
};

GoldenResult golden_min(const std::function<double(double)>& f, double a,
                        double b, double rel_tol) {
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  const double scale = std::max(std::abs(a), std::abs(b)) + 1e-300;
  while (b - a > rel_tol * scale) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
  }
  GoldenResult r;
  r.arg = 0.5 * (a + b);
  r.value = std::min(f1, f2);
  return r;
}

}  // namespace

namespace {
double k_functional_impl(const ScalarField& f, const ExponentField& p0,
                         double t, double fmax, double norm0) {
  auto objective = [&](double s) {
    return truncated_norm(f, p0, s, norm0) + t * s;
  };
  const GoldenResult r = golden_min(objective, 0.0, fmax, 1e-8);
  // endpoints compete with the interior optimum
  return std::min({r.value, norm0, t * fmax});
}
}  // namespace

double k_functional_linf(const ScalarField& f, const ExponentField& p0,
                         double t) {
  if (!(t > 0.0)) throw std::invalid_argument("k functional requires t > 0");
  const double fmax = f.max_abs();
  if (fmax == 0.0) return 0.0;
  return k_functional_impl(f, p0, t, fmax, truncated_norm(f, p0, 0.0, 1.0));
}

KProfile theta_norm(const ScalarField& f, const ExponentField& p0, double theta,
                    const TGridSpec& grid) {
  if (!(theta > 0.0 && theta < 1.0))
    throw std::invalid_argument("theta must lie in (0,1)");
  const double fmax = f.max_abs();
  KProfile prof;
  prof.theta = theta;
  if (fmax == 0.0) return prof;

  const double norm0 = truncated_norm(f, p0, 0.0, 1.0);
  double center = grid.center.value_or(norm0 / fmax);
  if (!(center > 0.0) || !std::isfinite(center)) center = 1.0;

  double lo_dec = std::log10(center) - 0.5 * grid.decades;
  double hi_dec = std::log10(center) + 0.5 * grid.decades;

  auto weighted = [&](double t) {
    return std::pow(t, -theta) * k_functional_impl(f, p0, t, fmax, norm0);
  };

  for (int attempt = 0;; ++attempt) {
    const int m =
        static_cast<int>(std::ceil((hi_dec - lo_dec) * grid.per_decade)) + 1;
    prof.t.resize(m);
    prof.k.resize(m);
    std::vector<double> w(m);
    for (int i = 0; i < m; ++i) {
      prof.t[i] = std::pow(10.0, lo_dec + (hi_dec - lo_dec) * i / (m - 1));
      prof.k[i] = k_functional_impl(f, p0, prof.t[i], fmax, norm0);
      w[i] = std::pow(prof.t[i], -theta) * prof.k[i];
    }
    const auto it = std::max_element(w.begin(), w.end());
    const int arg = static_cast<int>(it - w.begin());
    const bool left_bad = arg == 0 || w.front() >= 0.5 * *it;
    const bool right_bad = arg == m - 1 || w.back() >= 0.5 * *it;
    if (!left_bad && !right_bad) {
      // sub-grid refinement: dyadic zoom around the grid argmax
      double a = prof.t[arg - 1], b = prof.t[arg + 1];
      double best = *it, best_t = prof.t[arg];
      for (int round = 0; round < 6; ++round) {
        const double la = std::log(a), lb = std::log(b);
        double za = a, zb = b;
        for (int j = 0; j <= 8; ++j) {
          const double tt = std::exp(la + (lb - la) * j / 8.0);
          const double val = weighted(tt);
          if (val > best) {
            best = val;
            best_t = tt;
            za = std::exp(la + (lb - la) * std::max(0, j - 1) / 8.0);
            zb = std::exp(la + (lb - la) * std::min(8, j + 1) / 8.0);
          }
        }
        a = za;
        b = zb;
      }
      prof.norm_value = best;
      prof.argmax_t = best_t;
      return prof;
    }
    if (attempt >= 3) throw std::runtime_error("extend t-grid");
    if (left_bad) lo_dec -= 2.0;
    if (right_bad) hi_dec += 2.0;
  }
}

InterpolationIdentityReport interpolation_identity_check(
    std::span<const ScalarField> suite, const ExponentField& p, double theta,
    const ScanSpec& scan, const TGridSpec& grid) {
  ExponentField p0 = ExponentField::make(
      p.field.map([theta](double v) { return (1.0 - theta) * v; }),
      (1.0 - theta) * p.declared_lo, (1.0 - theta) * p.declared_hi,
      p.declared_log_holder
          ? std::optional<double>((1.0 - theta) * *p.declared_log_holder)
          : std::nullopt);

  InterpolationIdentityReport rep;
  for (const ScalarField& f : suite) {
    const double wn = weak_norm(f, p, scan).value;
    const double tn = theta_norm(f, p0, theta, grid).norm_value;
    if (wn > 0.0) rep.ratios.push_back(tn / wn);
  }
  rep.containment = 1.0;
  for (double r : rep.ratios)
    rep.containment = std::max({rep.containment, r, r > 0.0 ? 1.0 / r : 1e300});
  return rep;
}

std::pair<double, double> infimum_envelope(double alpha, double beta) {
  return {std::min(alpha / beta, 1.0), 1.0 + alpha / beta};
}

InfimumResult infimum_formula(double alpha, double beta, double delta,
                              double t) {
  if (!(alpha > 0.0 && beta > 0.0 && delta > 0.0 && t > 0.0))
    throw std::invalid_argument("infimum lemma needs positive parameters");

  auto f = [&](double r) {
    return alpha / beta * std::pow(r, -beta) +
           t * (std::pow(r, alpha) - std::pow(delta, alpha));
  };
  const double r0 = std::pow(t, -1.0 / (alpha + beta));  // unconstrained minimum

  double hi = 10.0 * std::max(delta, r0);
  InfimumResult res;
  for (int attempt = 0;; ++attempt) {
    const GoldenResult g = golden_min(f, delta, hi, 1e-9);
    if (g.arg < hi / 1.2 || g.arg <= delta * (1.0 + 1e-9)) {
      res.numeric = std::min(g.value, f(delta));
      res.argmin = g.value <= f(delta) ? g.arg : delta;
      break;
    }
    if (attempt >= 3)
      throw std::runtime_error("infimum search hit the bracket boundary");
    hi *= 10.0;
  }
  res.formula = std::min(std::pow(t, beta / (alpha + beta)),
                         std::pow(delta, -beta));
  return res;
}

TailKernelResult tail_kernel_norm(const TailKernelSpec& spec) {
  const int n = spec.dim;
  const double a = spec.alpha;
  if (!(a > 0.0 && a < n)) throw std::invalid_argument("alpha must lie in (0,n)");
  if (!(spec.r_max >= 1e3 * spec.delta))
    throw std::invalid_argument("r_max must cover at least 1e3 delta");

  // sampled exponent bounds over [delta/1e3, r_max] plus the far field
  double plo = spec.p_inf, phi = spec.p_inf;
  for (int i = 0; i <= 400; ++i) {
    const double r = spec.delta * 1e-3 *
                     std::pow(spec.r_max / (spec.delta * 1e-3), i / 400.0);
    const double pv = spec.p.eval_radius(r);
    plo = std::min(plo, pv);
    phi = std::max(phi, pv);
  }
  if (!(plo > 1.0)) throw std::invalid_argument("tail kernel needs p^- > 1");
  if (!(phi < n / a)) throw std::invalid_argument("tail kernel needs p^+ < n/alpha");

  const double sigma = sphere_area(n);
  const double wn = ball_volume(n);

  // log-spaced shells over [delta, r_max]
  const double decades = std::log10(spec.r_max / spec.delta);
  const int m = std::max(64, static_cast<int>(std::ceil(
                                  decades * spec.cells_per_decade)));
  const double la = std::log(spec.delta), lb = std::log(spec.r_max);
  std::vector<double> mids(m), vols(m), pprime(m);
  double edge_prev = spec.delta;
  for (int i = 0; i < m; ++i) {
    const double edge = std::exp(la + (lb - la) * (i + 1.0) / m);
    mids[i] = std::sqrt(edge_prev * edge);
    vols[i] = wn * (std::pow(edge, n) - std::pow(edge_prev, n));
    const double pv = spec.p.eval_radius(mids[i]);
    pprime[i] = pv / (pv - 1.0);
    edge_prev = edge;
  }
  const double ppinf = spec.p_inf / (spec.p_inf - 1.0);
  const double tail_pow = (n - a) * ppinf - n;  // > 0 under the preconditions

  auto rho = [&](double lam) {
    double s = 0.0;
    for (int i = 0; i < m; ++i)
      s += std::pow(std::pow(mids[i], a - n) / lam, pprime[i]) * vols[i];
    s += sigma * std::pow(lam, -ppinf) * std::pow(spec.r_max, -tail_pow) /
         tail_pow;
    return s;
  };

  double hi = 1.0;
  while (rho(hi) > 1.0) hi *= 4.0;
  double lo = hi;
  while (rho(lo) < 1.0) lo *= 0.25;
  TailKernelResult out;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double r = rho(mid);
    if (r > 1.0) {
      lo = mid;
    } else {
      if (1.0 - r <= 1e-10) {
        out.lhs = mid;
        break;
      }
      hi = mid;
    }
    out.lhs = mid;
  }

  // harmonic mean of p^#_alpha over B(x, delta), with an analytic core
  const int mc = 512;
  const double core = spec.delta * 1e-6;
  double inv_mass = std::pow(core, n) / sobolev_conjugate(
                                            spec.p.eval_radius(0.0), a, n);
  double ce = core;
  for (int i = 0; i < mc; ++i) {
    const double edge = core * std::pow(spec.delta / core, (i + 1.0) / mc);
    const double r = std::sqrt(ce * edge);
    inv_mass += (std::pow(edge, n) - std::pow(ce, n)) /
                sobolev_conjugate(spec.p.eval_radius(r), a, n);
    ce = edge;
  }
  const double hm = std::pow(spec.delta, n) / inv_mass;
  out.rhs = std::pow(wn * std::pow(spec.delta, n), -1.0 / hm);
  return out;
}

}  // namespace vex
