#include "vex/geometry.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

namespace vex {

double sphere_area(int n) {
  if (n < 1) throw std::invalid_argument("dimension must be positive");
  return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

double ball_volume(int n) { return sphere_area(n) / n; }

namespace {

// J_m(c) = int_c^1 (1-u^2)^m du via the stable upward recursion
// J_m = (-c (1-c^2)^m + 2m J_{m-1}) / (2m+1), seeded at m = -1/2 or 0.
double cap_integral(int n, double c) {
  c = std::clamp(c, -1.0, 1.0);
  const double one_m_c2 = std::max(0.0, 1.0 - c * c);
  double m, j;
  int steps;
  if (n % 2 == 0) {
    m = -0.5;
    j = std::acos(c);
    steps = (n - 2) / 2;
  } else {
    m = 0.0;
    j = 1.0 - c;
    steps = (n - 3) / 2;
  }
  for (int k = 0; k < steps; ++k) {
    m += 1.0;
    j = (-c * std::pow(one_m_c2, m) + 2.0 * m * j) / (2.0 * m + 1.0);
  }
  return j;
}

}  // namespace

double spherical_cap_fraction(int n, double c) {
  return cap_integral(n, c) / (sphere_area(n) / sphere_area(n - 1));
}

double sphere_ball_overlap(int n, double s, double t, double rho) {
  if (t < 1e-14) return s < rho ? 1.0 : 0.0;
  if (rho >= s + t) return 1.0;
  if (rho <= std::abs(s - t)) return 0.0;
  const double c = (s * s + t * t - rho * rho) / (2.0 * s * t);
  return spherical_cap_fraction(n, c);
}

double distance(const Point& a, const Point& b, int dim) {
  // points store at most three coordinates; higher-dimensional radial
  // computations place them on the first axis
  double s = 0.0;
  for (int d = 0; d < std::min(dim, 3); ++d)
    s += (a[d] - b[d]) * (a[d] - b[d]);
  return std::sqrt(s);
}

double norm(const Point& a, int dim) {
  double s = 0.0;
  for (int d = 0; d < std::min(dim, 3); ++d) s += a[d] * a[d];
  return std::sqrt(s);
}

Domain Domain::box(int dim, Point lo, Point hi, int resolution) {
  Domain d;
  d.kind = DomainKind::Box;
  d.dim = dim;
  d.lo = lo;
  d.hi = hi;
  d.resolution = resolution;
  for (int a = 0; a < dim; ++a)
    if (!(hi[a] > lo[a])) throw std::invalid_argument("box has empty extent");
  if (resolution < 1) throw std::invalid_argument("resolution must be positive");
  return d;
}

Domain Domain::ball(int dim, Point center, double radius, int resolution,
                    double inner_cutoff) {
  Domain d;
  d.kind = DomainKind::Ball;
  d.dim = dim;
  d.center = center;
  d.radius = radius;
  d.resolution = resolution;
  d.inner_cutoff = inner_cutoff;
  if (!(radius > 0.0)) throw std::invalid_argument("ball radius must be positive");
  if (resolution < 1) throw std::invalid_argument("resolution must be positive");
  if (inner_cutoff < 0.0) throw std::invalid_argument("inner cutoff must be nonnegative");
  return d;
}

double Domain::diameter() const {
  if (kind == DomainKind::Ball) return 2.0 * radius;
  Point zero{};
  Point ext{};
  for (int a = 0; a < dim; ++a) ext[a] = hi[a] - lo[a];
  return distance(ext, zero, dim);
}

GridPtr Grid::lattice(const Domain& d) {
  if (d.dim < 1 || d.dim > 2)
    throw std::invalid_argument("lattice grids support dim in {1,2}");
  auto g = std::shared_ptr<Grid>(new Grid());
  g->domain_ = d;
  g->radial_ = false;

  Point lo = d.lo, hi = d.hi;
  if (d.kind == DomainKind::Ball) {
    for (int a = 0; a < d.dim; ++a) {
      lo[a] = d.center[a] - d.radius;
      hi[a] = d.center[a] + d.radius;
    }
  }
  const int res = d.resolution;
  std::array<double, 3> h{};
  double cell_vol = 1.0;
  for (int a = 0; a < d.dim; ++a) {
    h[a] = (hi[a] - lo[a]) / res;
    cell_vol *= h[a];
  }
  g->lattice_edge_ = h[0];

  const std::size_t per_axis = static_cast<std::size_t>(res);
  const std::size_t total = d.dim == 1 ? per_axis : per_axis * per_axis;
  g->centers_.reserve(total * d.dim);
  g->volumes_.reserve(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    Point c{};
    if (d.dim == 1) {
      c[0] = lo[0] + (idx + 0.5) * h[0];
    } else {
      const std::size_t i = idx % per_axis, j = idx / per_axis;
      c[0] = lo[0] + (i + 0.5) * h[0];
      c[1] = lo[1] + (j + 0.5) * h[1];
    }
    if (d.kind == DomainKind::Ball && distance(c, d.center, d.dim) >= d.radius)
      continue;
    if (d.singular_point &&
        distance(c, *d.singular_point, d.dim) < d.inner_cutoff)
      continue;
    for (int a = 0; a < d.dim; ++a) g->centers_.push_back(c[a]);
    g->volumes_.push_back(cell_vol);
  }
  if (g->volumes_.empty())
    throw std::invalid_argument("domain discretization produced no cells");
  g->total_volume_ = 0.0;
  for (double v : g->volumes_) g->total_volume_ += v;
  return g;
}

GridPtr Grid::radial(const Domain& d) {
  if (d.kind != DomainKind::Ball)
    throw std::invalid_argument("radial grids require a ball domain");
  if (d.dim < 2) throw std::invalid_argument("radial grids support dim >= 2");
  if (norm(d.center, d.dim) != 0.0)
    throw std::invalid_argument("radial grids must be centered at the origin");
  if (!(d.inner_cutoff > 0.0))
    throw std::invalid_argument("radial grids require a positive inner cutoff");
  if (!(d.inner_cutoff < d.radius))
    throw std::invalid_argument("inner cutoff must be below the outer radius");

  auto g = std::shared_ptr<Grid>(new Grid());
  g->domain_ = d;
  g->radial_ = true;

  const int m = d.resolution;
  const double la = std::log(d.inner_cutoff);
  const double lb = std::log(d.radius);
  g->edges_.resize(m + 1);
  for (int i = 0; i <= m; ++i)
    g->edges_[i] = std::exp(la + (lb - la) * i / m);
  g->edges_.front() = d.inner_cutoff;
  g->edges_.back() = d.radius;

  const double wn = ball_volume(d.dim);
  g->radii_.resize(m);
  g->volumes_.resize(m);
  for (int i = 0; i < m; ++i) {
    g->radii_[i] = std::sqrt(g->edges_[i] * g->edges_[i + 1]);
    g->volumes_[i] = wn * (std::pow(g->edges_[i + 1], d.dim) -
                           std::pow(g->edges_[i], d.dim));
  }
  g->total_volume_ = wn * (std::pow(d.radius, d.dim) -
                           std::pow(d.inner_cutoff, d.dim));
  return g;
}

Point Grid::center(std::size_t i) const {
  if (radial_) return point(radii_[i]);
  Point c{};
  for (int a = 0; a < domain_.dim; ++a) c[a] = centers_[i * domain_.dim + a];
  return c;
}

double Grid::spacing() const {
  if (!radial_) return lattice_edge_;
  double w = edges_[1] - edges_[0];
  for (std::size_t i = 1; i + 1 < edges_.size(); ++i)
    w = std::min(w, edges_[i + 1] - edges_[i]);
  return w;
}

double Grid::spacing_at(double r) const {
  if (!radial_) return lattice_edge_;
  // width of the cell whose interval contains r (clamped to the grid)
  if (r <= edges_.front()) return edges_[1] - edges_[0];
  if (r >= edges_.back()) return edges_[edges_.size() - 1] - edges_[edges_.size() - 2];
  auto it = std::upper_bound(edges_.begin(), edges_.end(), r);
  const std::size_t k = static_cast<std::size_t>(it - edges_.begin());
  return edges_[k] - edges_[k - 1];
}

}  // namespace vex
