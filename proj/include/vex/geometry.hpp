#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

namespace vex {

// Points carry up to three coordinates; the active dimension comes from the
// domain. Radial-profile computations in higher dimensions only ever see
// points on the first axis.
using Point = std::array<double, 3>;

inline Point point(double x, double y = 0.0, double z = 0.0) { return {x, y, z}; }

double sphere_area(int n);  // |S^{n-1}|
double ball_volume(int n);  // |B(0,1)|

// Fraction of the unit sphere S^{n-1} within polar angle acos(c) of the pole.
double spherical_cap_fraction(int n, double c);

// Fraction of the sphere {|y| = s} (about the origin) inside the ball of
// radius rho centered at distance t from the origin.
double sphere_ball_overlap(int n, double s, double t, double rho);

double distance(const Point& a, const Point& b, int dim);
double norm(const Point& a, int dim);

struct Ball {
  Point center{};
  double radius = 0.0;
};

enum class DomainKind { Box, Ball };

/// Bounded evaluation region. Lattice sampling supports dim <= 2; radial
/// profiles (over a ball, sampled in the radius) support any dim >= 2 and are
/// the only way unbounded ranges are approximated (explicit r_max truncation).
struct Domain {
  DomainKind kind = DomainKind::Box;
  int dim = 2;
  Point lo{};              // box corner (low)
  Point hi{};              // box corner (high)
  Point center{};          // ball center
  double radius = 1.0;     // ball radius
  int resolution = 64;     // cells per axis (lattice) or radial cell count
  double inner_cutoff = 0.0;
  std::optional<Point> singular_point;

  static Domain box(int dim, Point lo, Point hi, int resolution);
  static Domain ball(int dim, Point center, double radius, int resolution,
                     double inner_cutoff = 0.0);

  double diameter() const;
};

/// Midpoint-rule discretization of a Domain. Every integral in the library is
/// a sum of field values at cell centers times cell volumes, in cell-index
/// order. Grids are immutable after construction.
class Grid {
 public:
  static std::shared_ptr<const Grid> lattice(const Domain& d);
  // Log-spaced radial shells over [inner_cutoff, radius]; requires a ball
  // domain centered at the origin with inner_cutoff > 0.
  static std::shared_ptr<const Grid> radial(const Domain& d);

  bool is_radial() const { return radial_; }
  int dim() const { return domain_.dim; }
  std::size_t cells() const { return volumes_.size(); }
  const Domain& domain() const { return domain_; }

  Point center(std::size_t i) const;
  double volume(std::size_t i) const { return volumes_[i]; }
  double total_volume() const { return total_volume_; }

  // Lattice: uniform edge length per axis. Radial: width of the cell nearest
  // the given radius (log-spaced cells are non-uniform).
  double spacing() const;
  double spacing_at(double r) const;

  const std::vector<double>& radii() const { return radii_; }
  const std::vector<double>& edges() const { return edges_; }
  double r_min() const { return edges_.front(); }
  double r_max() const { return edges_.back(); }

  // Lattice cell centers, dim-major: [i*dim + axis].
  const std::vector<double>& flat_centers() const { return centers_; }

 private:
  Grid() = default;
  Domain domain_;
  bool radial_ = false;
  std::vector<double> centers_;  // lattice
  std::vector<double> radii_;    // radial cell centers (geometric midpoints)
  std::vector<double> edges_;    // radial cell edges, size cells()+1
  std::vector<double> volumes_;  // per-cell volume
  double total_volume_ = 0.0;
  double lattice_edge_ = 0.0;
};

using GridPtr = std::shared_ptr<const Grid>;

}  // namespace vex
