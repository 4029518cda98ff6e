#pragma once

#include <array>
#include <functional>
#include <memory>
#include <vector>

#include "relaxarea/error.hpp"
#include "relaxarea/types.hpp"

namespace relaxarea {

/// A parametrization of (part of) a domain by a box in parameter space.
///
/// Radial charts put the coordinate singularity of polar/spherical coordinates on the
/// center of the domain, which is where the example fields are singular; the Jacobian
/// factor then cancels the 1/rho growth of their gradients.
struct Chart {
  enum class Kind {
    cartesian,       // p = x
    polar,           // (r, theta)
    spherical,       // (r, phi, theta), phi measured from +x3
    hyperspherical,  // (r, phi1, phi2, theta)
    cone,            // (s, angles..., t): xi = s r(t) omega, r(t) = eps (L - |t|)
  };

  Kind kind = Kind::cartesian;
  int n = 2;
  std::array<double, kMaxSourceDim> lo{};
  std::array<double, kMaxSourceDim> hi{};
  Point center;
  Frame frame;  // cone only: columns 0..c-1 span the cross-section, column c is the axis
  int cross_dim = 2;
  double epsilon = 0.0;
  double half_length = 0.0;

  /// Writes the image of parameter point p to x and returns the Jacobian determinant.
  double map(const double* p, Point& x) const;
};

/// Geometry of a cone over a segment: the points center + F (xi, t) with |t| <= L and
/// s_lo <= |xi| / (eps (L - |t|)) <= s_hi.
struct ConeSpec {
  Point center;
  Frame frame;
  int cross_dim = 2;
  double half_length = 1.0;
  double epsilon = 0.1;
  double s_lo = 0.0;
  double s_hi = 1.0;
};

enum class DomainKind { ball, cube, annulus, cone, sector, difference };

/// Integration region. Immutable; cheap to copy (difference operands are shared).
class Domain {
 public:
  static Domain ball(int n, double radius, Point center);
  static Domain cube(int n, double half_side, Point center);
  static Domain annulus(int n, double r_in, double r_out, Point center);
  static Domain cone(ConeSpec spec);
  /// Cone around the segment [a, b] in R^n with profile eps * dist(t, {-L, L}); the
  /// cross-section is the orthogonal complement of the segment, so n - 1 = cross_dim.
  static Domain cone_over_segment(const Point& a, const Point& b, double epsilon, double s_lo = 0.0,
                                  double s_hi = 1.0);
  /// Radial band [r_lo, r_hi] times an angular band: the polar angle for n = 2,
  /// the colatitude from +x3 for n = 3.
  static Domain sector(int n, Point center, double r_lo, double r_hi, double ang_lo, double ang_hi);
  static Domain difference(const Domain& a, const Domain& b);

  DomainKind kind() const noexcept { return kind_; }
  int dim() const noexcept { return n_; }
  const Point& center() const noexcept { return center_; }
  double radius() const noexcept { return r_hi_; }
  double inner_radius() const noexcept { return r_lo_; }
  double half_side() const noexcept { return r_hi_; }
  double angle_lo() const noexcept { return ang_lo_; }
  double angle_hi() const noexcept { return ang_hi_; }
  const ConeSpec& cone_spec() const { return cone_; }
  const Domain& minuend() const { return *a_; }
  const Domain& subtrahend() const { return *b_; }

  bool contains(const Point& x) const;
  double volume() const;

  /// Axis-aligned box enclosing the domain.
  std::pair<Point, Point> bounding_box() const;

  /// Charts covering the domain. For differences that do not reduce to a radial band the
  /// charts cover the minuend and `excluded` reports points to be masked out.
  struct Parametrization {
    std::vector<Chart> charts;
    std::function<bool(const Point&)> excluded;
  };
  Parametrization parametrize() const;

 private:
  Domain() = default;
  bool is_radial() const;

  DomainKind kind_ = DomainKind::ball;
  int n_ = 2;
  Point center_;
  double r_lo_ = 0.0;
  double r_hi_ = 1.0;
  double ang_lo_ = 0.0;
  double ang_hi_ = 0.0;
  ConeSpec cone_;
  std::shared_ptr<const Domain> a_;
  std::shared_ptr<const Domain> b_;
};

/// Volume of the unit ball in R^n.
double unit_ball_volume(int n);

}  // namespace relaxarea
