#include "vex/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "vex/spaces.hpp"

namespace vex {

namespace {

constexpr double kTiny = 1e-14;

// int_c^1 (1-u^2)^{(n-3)/2} du, i.e. the unnormalized polar-cap integral
double cap_integral(int n, double c) {
  return spherical_cap_fraction(n, c) * (sphere_area(n) / sphere_area(n - 1));
}

double default_cutoff(const Grid& g, double at_radius) {
  return 2.0 * (g.is_radial() ? g.spacing_at(at_radius) : g.spacing());
}

double kernel_alpha_at(const KernelSpec& k, const Point& x) {
  return k.alpha.eval(x);
}

// Distance profile of lattice cells from x, sorted, with prefix sums of
// weight values. Shared by the maximal operator and ball masses.
struct SortedProfile {
  std::vector<double> dist;
  std::vector<double> prefix;  // prefix[i] = sum of weights with dist < dist[i]

  SortedProfile(const Grid& g, const Point& x,
                const std::function<double(std::size_t)>& weight) {
    const std::size_t n = g.cells();
    std::vector<std::pair<double, double>> dw(n);
    for (std::size_t i = 0; i < n; ++i)
      dw[i] = {distance(g.center(i), x, g.dim()), weight(i)};
    std::sort(dw.begin(), dw.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    dist.resize(n);
    prefix.resize(n + 1);
    prefix[0] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      dist[i] = dw[i].first;
      prefix[i + 1] = prefix[i] + dw[i].second;
    }
  }

  double mass_below(double r) const {
    const auto it = std::lower_bound(dist.begin(), dist.end(), r);
    return prefix[static_cast<std::size_t>(it - dist.begin())];
  }
};

}  // namespace

int MeasureSpec::dim() const {
  if (ambient_dim > 0) return ambient_dim;
  if (density) return density->grid->dim();
  throw std::invalid_argument("atom-only measure needs an ambient dimension");
}

double MeasureSpec::total_mass() const {
  double m = 0.0;
  if (density) {
    const Grid& g = *density->grid;
    for (std::size_t i = 0; i < g.cells(); ++i)
      m += (*density)[i] * g.volume(i);
  }
  for (const auto& a : atoms) m += a.mass;
  return m;
}

RadiusGrid RadiusGrid::log_spaced(double r_min, double r_max, int per_decade,
                                  int min_points) {
  if (!(r_min > 0.0) || !(r_max > r_min))
    throw std::invalid_argument("radius grid needs 0 < r_min < r_max");
  const double decades = std::log10(r_max / r_min);
  const int m = std::max(min_points,
                         static_cast<int>(std::ceil(decades * per_decade)) + 1);
  RadiusGrid g;
  g.r.resize(m);
  const double la = std::log(r_min), lb = std::log(r_max);
  for (int i = 0; i < m; ++i) g.r[i] = std::exp(la + (lb - la) * i / (m - 1));
  return g;
}

RatioStats RatioStats::of(std::span<const double> values) {
  RatioStats s;
  if (values.empty()) return s;
  s.min = values[0];
  s.max = values[0];
  for (double v : values) {
    s.min = std::min(s.min, v);
    s.max = std::max(s.max, v);
    s.mean += v;
  }
  s.mean /= static_cast<double>(values.size());
  s.count = values.size();
  return s;
}

double maximal(const ScalarField& f, const Point& x, const RadiusGrid& radii) {
  if (radii.r.empty()) throw std::invalid_argument("empty radius grid");
  const Grid& g = *f.grid;
  const int n = g.dim();
  const double wn = ball_volume(n);
  double best = 0.0;

  if (!g.is_radial()) {
    SortedProfile prof(g, x, [&](std::size_t i) {
      return std::abs(f[i]) * g.volume(i);
    });
    for (double r : radii.r)
      best = std::max(best, prof.mass_below(r) / (wn * std::pow(r, n)));
    return best;
  }

  const double t = norm(x, n);
  const auto& rs = g.radii();
  for (double rho : radii.r) {
    double mass = 0.0;
    for (std::size_t i = 0; i < rs.size(); ++i) {
      const double frac = sphere_ball_overlap(n, rs[i], t, rho);
      if (frac > 0.0) mass += std::abs(f[i]) * g.volume(i) * frac;
    }
    best = std::max(best, mass / (wn * std::pow(rho, n)));
  }
  return best;
}

ScalarField maximal_field(const ScalarField& f, const RadiusGrid& radii) {
  ScalarField out;
  out.grid = f.grid;
  out.values.resize(f.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    out.values[i] = maximal(f, f.grid->center(i), radii);
  return out;
}

RieszValue riesz_detailed(const ScalarField& f, const KernelSpec& k,
                          const Point& x) {
  const Grid& g = *f.grid;
  const int n = g.dim();
  if (!(k.alpha.declared_lo > 0.0) || !(k.alpha.declared_hi < n))
    throw std::invalid_argument("kernel order must lie in (0, n)");
  const double alpha_x = kernel_alpha_at(k, x);
  const bool at_x = k.convention == KernelConvention::AlphaAtX;

  RieszValue out;

  if (!g.is_radial()) {
    const double eps = k.cutoff.value_or(default_cutoff(g, 0.0));
    double sum = 0.0;
    for (std::size_t i = 0; i < g.cells(); ++i) {
      const double d = distance(g.center(i), x, n);
      if (d <= eps) {
        if (eps == 0.0 && d == 0.0)
          throw std::invalid_argument("singular cell requires cutoff");
        continue;
      }
      const double v = std::abs(f[i]);
      if (v == 0.0) continue;
      const double a = at_x ? alpha_x : k.alpha[i];
      sum += v * std::pow(d, a - n) * g.volume(i);
    }
    out.value = sum;
    out.singular_bound = eps > 0.0 ? f.max_abs() * sphere_area(n) *
                                         std::pow(eps, alpha_x) / alpha_x
                                   : 0.0;
    return out;
  }

  // radial representation: spherical reduction per shell with a graded
  // log-angle quadrature and the locally-constant correction on the
  // excluded ball
  const double t = norm(x, n);
  const double eps = k.cutoff.value_or(default_cutoff(g, t));
  const auto& rs = g.radii();
  const double ang_norm = sphere_area(n - 1) / sphere_area(n);
  const int per_decade = std::max(8, k.theta_per_decade);

  double sum = 0.0;
  bool excluded_any = false;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const double v = std::abs(f[i]);
    if (v == 0.0) continue;
    const double s = rs[i];
    const double a = (at_x ? alpha_x : k.alpha[i]) - n;

    if (t < kTiny) {
      if (s <= eps) {
        excluded_any = true;
        continue;
      }
      sum += v * g.volume(i) * std::pow(s, a);
      continue;
    }

    const double dmin = std::abs(s - t);
    double theta_lo;
    double head = 0.0;
    if (dmin < eps) {
      excluded_any = true;
      theta_lo = std::acos(std::clamp(
          (s * s + t * t - eps * eps) / (2.0 * s * t), -1.0, 1.0));
    } else {
      if (dmin == 0.0)
        throw std::invalid_argument("singular cell requires cutoff");
      // analytic head where dist is within 1/64 of |s-t|
      theta_lo = std::clamp(dmin / (8.0 * std::sqrt(s * t)), 0.0,
                            std::numbers::pi / 16.0);
      head = std::pow(dmin, a) * cap_integral(n, std::cos(theta_lo));
    }
    if (theta_lo >= std::numbers::pi) {
      sum += v * g.volume(i) * ang_norm * head;
      continue;
    }
    theta_lo = std::max(theta_lo, 1e-12);

    const double decades = std::log10(std::numbers::pi / theta_lo);
    const int m = std::max(24, static_cast<int>(std::ceil(decades * per_decade)));
    const double la = std::log(theta_lo), lb = std::log(std::numbers::pi);
    double integral = head;
    double edge_prev = theta_lo;
    for (int q = 1; q <= m; ++q) {
      const double edge = std::exp(la + (lb - la) * q / m);
      const double theta = std::sqrt(edge_prev * edge);
      const double half = std::sin(0.5 * theta);
      const double dist2 = dmin * dmin + 4.0 * s * t * half * half;
      double w = std::pow(dist2, 0.5 * a);
      if (n != 2) {
        const double st = std::sin(theta);
        w *= n == 3 ? st : std::pow(st, n - 2);
      }
      integral += w * (edge - edge_prev);
      edge_prev = edge;
    }
    sum += v * g.volume(i) * ang_norm * integral;
  }

  out.value = sum;
  const double corr = sphere_area(n) * std::pow(eps, alpha_x) / alpha_x;
  if (excluded_any) out.value += f.eval_radius(t) * corr;
  out.singular_bound = f.max_abs() * corr;
  return out;
}

double riesz(const ScalarField& f, const KernelSpec& k, const Point& x) {
  return riesz_detailed(f, k, x).value;
}

ScalarField riesz_field(const ScalarField& f, const KernelSpec& k) {
  ScalarField out;
  out.grid = f.grid;
  out.values.resize(f.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    out.values[i] = riesz(f, k, f.grid->center(i));
  return out;
}

RatioStats kernel_equivalence_check(const ScalarField& f,
                                    const ExponentField& alpha,
                                    std::span<const Point> samples,
                                    std::optional<double> cutoff) {
  KernelSpec kx{KernelConvention::AlphaAtX, alpha, cutoff};
  KernelSpec ky{KernelConvention::AlphaAtY, alpha, cutoff};
  std::vector<double> ratios;
  ratios.reserve(samples.size());
  for (const Point& x : samples) {
    const double a = riesz(f, kx, x);
    const double b = riesz(f, ky, x);
    if (b > 0.0) ratios.push_back(a / b);
  }
  return RatioStats::of(ratios);
}

HedbergReport hedberg_check(const ScalarField& f, const ExponentField& p,
                            const ExponentField& alpha,
                            std::span<const Point> samples,
                            const RadiusGrid& radii) {
  const int n = f.grid->dim();
  for (std::size_t i = 0; i < f.size(); ++i)
    if (alpha[i] * p[i] >= n)
      throw std::invalid_argument("supercritical exponent");
  // slack above the norm bisection's own residual
  if (luxemburg_norm(f, p).value > 1.0 + 1e-6)
    throw std::invalid_argument("normalize input");

  KernelSpec k{KernelConvention::AlphaAtY, alpha};
  std::vector<double> ratios;
  ratios.reserve(samples.size());
  for (const Point& x : samples) {
    const double num = riesz(f, k, x);
    const double m = maximal(f, x, radii);
    if (m <= 0.0) continue;
    const double expo = 1.0 - alpha.eval(x) * p.eval(x) / n;
    ratios.push_back(num / std::pow(m, expo));
  }
  HedbergReport rep;
  rep.ratios = RatioStats::of(ratios);
  rep.sup = rep.ratios.max;
  return rep;
}

double ball_mass(const MeasureSpec& mu, const Point& x, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("ball radius must be positive");
  double mass = 0.0;
  if (mu.density) {
    const ScalarField& rho = *mu.density;
    const Grid& g = *rho.grid;
    const int n = g.dim();
    if (g.is_radial()) {
      const double t = norm(x, n);
      for (std::size_t i = 0; i < g.cells(); ++i) {
        const double frac = sphere_ball_overlap(n, g.radii()[i], t, r);
        if (frac > 0.0) mass += rho[i] * g.volume(i) * frac;
      }
    } else {
      for (std::size_t i = 0; i < g.cells(); ++i)
        if (distance(g.center(i), x, n) < r) mass += rho[i] * g.volume(i);
    }
  }
  if (!mu.atoms.empty()) {
    const int n = mu.dim();
    for (const auto& a : mu.atoms)
      if (distance(a.location, x, n) < r) mass += a.mass;
  }
  return mass;
}

std::vector<double> ball_mass_profile(const MeasureSpec& mu, const Point& x,
                                      std::span<const double> radii) {
  std::vector<double> out(radii.size(), 0.0);
  if (mu.density) {
    const ScalarField& rho = *mu.density;
    const Grid& g = *rho.grid;
    const int n = g.dim();
    if (g.is_radial()) {
      const double t = norm(x, n);
      for (std::size_t k = 0; k < radii.size(); ++k) {
        double mass = 0.0;
        for (std::size_t i = 0; i < g.cells(); ++i) {
          const double frac = sphere_ball_overlap(n, g.radii()[i], t, radii[k]);
          if (frac > 0.0) mass += rho[i] * g.volume(i) * frac;
        }
        out[k] = mass;
      }
    } else {
      SortedProfile prof(g, x,
                         [&](std::size_t i) { return rho[i] * g.volume(i); });
      for (std::size_t k = 0; k < radii.size(); ++k)
        out[k] = prof.mass_below(radii[k]);
    }
  }
  if (!mu.atoms.empty()) {
    const int n = mu.dim();
    for (const auto& a : mu.atoms) {
      const double d = distance(a.location, x, n);
      for (std::size_t k = 0; k < radii.size(); ++k)
        if (d < radii[k]) out[k] += a.mass;
    }
  }
  return out;
}

WolffResult wolff(const MeasureSpec& mu, double alpha_x, double p_x,
                  const Point& x, double R, const WolffSpec& spec) {
  if (!(p_x > 1.0)) throw std::invalid_argument("wolff requires p > 1");
  if (!(R > 0.0)) throw std::invalid_argument("wolff requires R > 0");

  const int n = mu.dim();
  double r_min = spec.r_min;
  if (r_min <= 0.0 && mu.density)
    r_min = mu.density->grid->spacing_at(norm(x, n));
  if (r_min <= 0.0) r_min = R * 1e-6;
  if (r_min >= R) throw std::invalid_argument("wolff grid is empty");

  // log-midpoint rule over [r_min, R]
  const double decades = std::log10(R / r_min);
  const int m = std::max(16, static_cast<int>(std::ceil(
                                 decades * spec.points_per_decade)));
  const double la = std::log(r_min), lb = std::log(R);
  std::vector<double> mids(m);
  for (int i = 0; i < m; ++i)
    mids[i] = std::exp(la + (lb - la) * (i + 0.5) / m);
  const std::vector<double> masses = ball_mass_profile(mu, x, mids);

  const double expo = 1.0 / (p_x - 1.0);
  const double kernel_pow = n - alpha_x * p_x;
  const double w = (lb - la) / m;
  double sum = 0.0;
  for (int i = 0; i < m; ++i) {
    if (masses[i] <= 0.0) continue;
    sum += std::pow(masses[i] / std::pow(mids[i], kernel_pow), expo) * w;
  }

  WolffResult res;
  res.value = sum;
  if (kernel_pow > 0.0) {
    for (const auto& a : mu.atoms)
      if (distance(a.location, x, n) < r_min) res.divergence_flag = true;
  }
  return res;
}

ScalarField havin_inner(const ScalarField& f, const ExponentField& alpha,
                        const ExponentField& p, std::optional<double> cutoff) {
  if (!(p.declared_lo > 1.0))
    throw std::invalid_argument("havin-mazya requires p^- > 1");
  KernelSpec k{KernelConvention::AlphaAtY, alpha, cutoff};
  ScalarField inner = riesz_field(f, k);
  for (std::size_t i = 0; i < inner.size(); ++i)
    inner.values[i] = std::pow(inner.values[i], 1.0 / (p[i] - 1.0));
  return inner;
}

double havin_mazya(const ScalarField& f, const ExponentField& alpha,
                   const ExponentField& p, const Point& x,
                   std::optional<double> cutoff) {
  ScalarField inner = havin_inner(f, alpha, p, cutoff);
  KernelSpec k{KernelConvention::AlphaAtY, alpha, cutoff};
  return riesz(inner, k, x);
}

WolffHavinReport wolff_vs_havin(const ScalarField& density,
                                const ExponentField& alpha,
                                const ExponentField& p,
                                std::span<const Point> samples, double R,
                                const WolffSpec& spec) {
  MeasureSpec mu;
  mu.density = density;

  ScalarField inner = havin_inner(density, alpha, p);
  KernelSpec k{KernelConvention::AlphaAtY, alpha};

  WolffHavinReport rep;
  std::vector<double> ratios;
  for (const Point& x : samples) {
    const double w =
        wolff(mu, alpha.eval(x), p.eval(x), x, R, spec).value;
    const double v = riesz(inner, k, x);
    rep.wolff_values.push_back(w);
    rep.havin_values.push_back(v);
    if (v > 0.0) ratios.push_back(w / v);
  }
  rep.ratios = RatioStats::of(ratios);
  rep.domination = true;
  for (std::size_t i = 0; i < rep.wolff_values.size(); ++i)
    if (rep.havin_values[i] <= 0.0 && rep.wolff_values[i] > 0.0)
      rep.domination = false;
  if (!ratios.empty() && !std::isfinite(rep.ratios.max)) rep.domination = false;
  return rep;
}

}  // namespace vex
