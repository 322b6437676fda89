#include "vex/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace vex {

namespace {

void require_shared_grid(const ScalarField& f, const ExponentField& p) {
  if (f.grid != p.grid()) throw std::invalid_argument("mismatched domains");
}

struct WeightedCell {
  double p;
  double vol;
};

// Luxemburg bisection on an explicit (p, vol) cell list with unit values:
// solves sum (1/lambda)^{p_i} vol_i = 1.
double indicator_luxemburg(const std::vector<WeightedCell>& cells, double tol) {
  if (cells.empty()) return 0.0;
  auto rho = [&](double lam) {
    double s = 0.0;
    for (const auto& c : cells) s += std::pow(1.0 / lam, c.p) * c.vol;
    return s;
  };
  double lo = 1e-12, hi = 2.0;
  while (rho(hi) > 1.0 && hi < 1e300) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double r = rho(mid);
    if (r > 1.0) {
      lo = mid;
    } else {
      if (1.0 - r <= tol) return mid;
      hi = mid;
    }
  }
  return hi;
}

struct LambdaGrid {
  std::vector<double> lambdas;
  double gap = 0.0;  // ratio between adjacent points - 1
};

LambdaGrid build_lambda_grid(const ScalarField& f, const ScanSpec& scan) {
  const double fmin = f.min_nonzero_abs();
  const double fmax = f.max_abs();
  if (fmax == 0.0) return {};  // zero field: empty grid
  if (!std::isfinite(fmax))
    throw std::invalid_argument("field has non-finite samples");
  double lo = scan.lambda_min.value_or(fmin * 0.999);
  double hi = scan.lambda_max.value_or(fmax * 1.001);
  if (lo > fmin || hi < fmax) throw std::invalid_argument("grid too narrow");
  if (!(lo > 0.0)) throw std::invalid_argument("lambda grid must be positive");
  const int m = std::max(2, scan.points);
  LambdaGrid g;
  g.lambdas.resize(m);
  const double la = std::log(lo), lb = std::log(hi);
  for (int k = 0; k < m; ++k) g.lambdas[k] = std::exp(la + (lb - la) * k / (m - 1));
  g.gap = std::exp((lb - la) / (m - 1)) - 1.0;
  return g;
}

}  // namespace

std::string to_string(NormResult::Method m) {
  switch (m) {
    case NormResult::Method::Bisection: return "bisection";
    case NormResult::Method::LevelScan: return "level-scan";
    case NormResult::Method::ClosedForm: return "closed-form";
  }
  return "?";
}

double modular(const ScalarField& f, const ExponentField& p) {
  require_shared_grid(f, p);
  const Grid& g = *f.grid;
  double s = 0.0;
  for (std::size_t i = 0; i < g.cells(); ++i) {
    const double v = std::abs(f[i]);
    if (v == 0.0) continue;
    s += std::pow(v, p[i]) * g.volume(i);
  }
  return s;
}

NormResult luxemburg_norm(const ScalarField& f, const ExponentField& p,
                          double tol) {
  require_shared_grid(f, p);
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");

  const double rho_f = modular(f, p);
  if (rho_f == 0.0) return {0.0, NormResult::Method::Bisection, 0.0};
  if (!std::isfinite(rho_f))
    throw std::runtime_error("modular is not finite; norm bisection cannot start");

  const Grid& g = *f.grid;
  auto rho = [&](double lam) {
    double s = 0.0;
    for (std::size_t i = 0; i < g.cells(); ++i) {
      const double v = std::abs(f[i]);
      if (v == 0.0) continue;
      s += std::pow(v / lam, p[i]) * g.volume(i);
    }
    return s;
  };

  double lo = 1e-12;
  double hi = std::max(1.0, rho_f) * (1.0 + f.max_abs());
  // the seed bracket can fall short when p^- < 1; extend until it contains the root
  int guard = 0;
  while (rho(hi) > 1.0) {
    hi *= 4.0;
    if (++guard > 600) throw std::runtime_error("luxemburg bracket extension failed");
  }

  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double r = rho(mid);
    if (r > 1.0) {
      lo = mid;
    } else {
      if (1.0 - r <= tol)
        return {mid, NormResult::Method::Bisection, std::abs(r - 1.0)};
      hi = mid;
    }
  }
  throw std::runtime_error("luxemburg bisection did not converge; bracket [" +
                           std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

NormResult weak_norm(const ScalarField& f, const ExponentField& p,
                     const ScanSpec& scan) {
  require_shared_grid(f, p);
  const LambdaGrid lg = build_lambda_grid(f, scan);
  if (lg.lambdas.empty()) return {0.0, NormResult::Method::LevelScan, 0.0};

  const Grid& g = *f.grid;
  double best = 0.0;
  std::vector<WeightedCell> cells;
  cells.reserve(g.cells());
  for (double lam : lg.lambdas) {
    cells.clear();
    for (std::size_t i = 0; i < g.cells(); ++i)
      if (std::abs(f[i]) > lam) cells.push_back({p[i], g.volume(i)});
    if (cells.empty()) continue;
    best = std::max(best, lam * indicator_luxemburg(cells, 1e-10));
  }
  return {best, NormResult::Method::LevelScan, lg.gap};
}

LevelScan weak_modular_sup(const ScalarField& f, const ExponentField& p,
                           const ScanSpec& scan) {
  require_shared_grid(f, p);
  const LambdaGrid lg = build_lambda_grid(f, scan);
  LevelScan out;
  if (lg.lambdas.empty()) return out;

  const Grid& g = *f.grid;
  out.lambdas = lg.lambdas;
  out.modular_values.resize(out.lambdas.size(), 0.0);
  for (std::size_t k = 0; k < out.lambdas.size(); ++k) {
    const double lam = out.lambdas[k];
    double s = 0.0;
    for (std::size_t i = 0; i < g.cells(); ++i)
      if (std::abs(f[i]) > lam) s += std::pow(lam, p[i]) * g.volume(i);
    out.modular_values[k] = s;
  }
  out.argmax_lambda = out.lambdas.front();
  for (std::size_t k = 0; k < out.lambdas.size(); ++k) {
    if (out.modular_values[k] > out.sup_value) {
      out.sup_value = out.modular_values[k];
      out.argmax_lambda = out.lambdas[k];
    }
  }
  return out;
}

EmbeddingReport embedding_check(const ScalarField& f, const ExponentField& p,
                                const ExponentField& q, const ScanSpec& scan) {
  require_shared_grid(f, p);
  require_shared_grid(f, q);
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < f.size(); ++i) gap = std::min(gap, p[i] - q[i]);
  if (!(gap > 0.0)) throw std::invalid_argument("embedding hypothesis violated");

  EmbeddingReport rep;
  rep.gap_min = gap;
  rep.weak_norm_p = weak_norm(f, p, scan).value;
  rep.q_modular = modular(f, q);

  const auto [plo, phi] = ess_bounds(p);
  const auto [qlo, qhi] = ess_bounds(q);
  const double w = rep.weak_norm_p;
  double series = 0.0;
  for (int i = 0;; ++i) {
    const double term = std::pow(2.0, -i * gap);
    series += term;
    if (term < 1e-12 * series) break;
    if (i > 100000) break;
  }
  rep.bound = std::pow(2.0, qhi) * std::max(std::pow(w, phi), std::pow(w, plo)) *
                  series +
              f.grid->total_volume();
  rep.holds = rep.q_modular <= rep.bound;
  return rep;
}

NormResult power_rescale(const ScalarField& f, double q,
                         const ExponentField& p, const ScanSpec& scan) {
  require_shared_grid(f, p);
  if (!(q > 0.0)) throw std::invalid_argument("rescale power must be positive");
  ScalarField g = f.map([q](double v) { return std::pow(std::abs(v), q); });
  ScalarField pq = p.field.map([q](double v) { return v / q; });
  std::optional<double> lh;
  if (p.declared_log_holder) lh = *p.declared_log_holder / q;
  ExponentField pq_field =
      ExponentField::make(std::move(pq), p.declared_lo / q, p.declared_hi / q, lh);
  return weak_norm(g, pq_field, scan);
}

ExponentField adversarial_exponent(const ScalarField& f,
                                   AdversarialBranch branch) {
  bool any = false;
  for (double v : f.values)
    if (v != 0.0) any = true;
  if (!any) throw std::invalid_argument("adversarial exponent needs f != 0");

  ScalarField q;
  q.grid = f.grid;
  q.values.resize(f.size());
  const double log_half = std::log(0.5);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double v = std::abs(f[i]);
    if (branch == AdversarialBranch::SmallValues) {
      q.values[i] = v == 0.0 ? 1.0 : log_half / std::log(0.5 * std::min(v, 1.0));
    } else {
      q.values[i] = v > 2.0 ? std::log(2.0) / std::log(0.5 * v) : 1.0;
    }
  }
  return ExponentField::from_samples(std::move(q));
}

double adversarial_level_modular(const ScalarField& f, const ExponentField& p,
                                 AdversarialBranch branch) {
  require_shared_grid(f, p);
  const Grid& g = *f.grid;
  double s = 0.0;
  if (branch == AdversarialBranch::SmallValues) {
    // lambda = 1/2; level set {|f|^q > 1/2} = {|f| > 0}; lambda^{p/q} = (min{|f|,1}/2)^p
    for (std::size_t i = 0; i < g.cells(); ++i) {
      const double v = std::abs(f[i]);
      if (v == 0.0) continue;
      s += std::pow(0.5 * std::min(v, 1.0), p[i]) * g.volume(i);
    }
  } else {
    // lambda = 2 over {|f| > 2}; lambda^{p/q} = (|f|/2)^p
    for (std::size_t i = 0; i < g.cells(); ++i) {
      const double v = std::abs(f[i]);
      if (v <= 2.0) continue;
      s += std::pow(0.5 * v, p[i]) * g.volume(i);
    }
  }
  return s;
}

bool sandwich_holds(double modular_value, const NormResult& norm,
                    const ExponentField& p) {
  if (norm.value == 0.0) return modular_value == 0.0;
  const auto [plo, phi] = ess_bounds(p);
  const double a = std::pow(norm.value, plo);
  const double b = std::pow(norm.value, phi);
  const double slack =
      norm.residual + 64.0 * std::numeric_limits<double>::epsilon();
  return std::min(a, b) * (1.0 - slack) <= modular_value &&
         modular_value <= std::max(a, b) * (1.0 + slack);
}

}  // namespace vex
