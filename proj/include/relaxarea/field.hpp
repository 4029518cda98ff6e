#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "relaxarea/error.hpp"
#include "relaxarea/types.hpp"

namespace relaxarea {

/// Radius of the exclusion guard around a declared singular set.
inline constexpr double kSingularGuard = 1e-12;
/// Relative finite-difference step; the actual step is kDefaultFdStep * max(1, |x|).
inline constexpr double kDefaultFdStep = 1e-5;

/// One flat piece of a singular set: a point, an oriented segment, or a flat disk.
///
/// `degree` is the declared winding of the field around the piece (0 when unknown). It is
/// what `analytic_chain` turns into a multiplicity.
struct SingularPiece {
  enum class Kind { point, segment, disk };

  Kind kind = Kind::point;
  Point a;                  // point / segment start / disk center
  Point b;                  // segment end
  std::vector<Point> span;  // disk: orthonormal spanning vectors
  double radius = 0.0;      // disk radius
  int degree = 0;

  static SingularPiece point(Point p, int degree = 0);
  static SingularPiece segment(Point a, Point b, int degree = 0);
  static SingularPiece disk(Point center, std::vector<Point> span, double radius, int degree = 0);

  double distance(const Point& x) const;
};

using SingularSet = std::vector<SingularPiece>;

double distance_to(const SingularSet& set, const Point& x);

enum class JacobianKind { analytic, finite_difference };

/// A map from (a subset of) R^n to R^m.
///
/// Immutable after construction; all member functions are safe to call concurrently.
class VectorField {
 public:
  using ValueFn = std::function<Value(const Point&)>;
  using JacobianFn = std::function<JacobianMatrix(const Point&)>;
  using DomainFn = std::function<bool(const Point&)>;

  VectorField(int n, int m, ValueFn value, JacobianFn jacobian = {}, SingularSet singular = {},
              bool sphere_valued = false, std::string name = "field");

  int source_dim() const noexcept { return n_; }
  int target_dim() const noexcept { return m_; }
  bool sphere_valued() const noexcept { return sphere_valued_; }
  const SingularSet& singular_set() const noexcept { return singular_; }
  const std::string& name() const noexcept { return name_; }
  JacobianKind jacobian_kind() const noexcept {
    return jacobian_ ? JacobianKind::analytic : JacobianKind::finite_difference;
  }
  double fd_step() const noexcept { return fd_step_; }

  /// Copies with a modified configuration.
  VectorField with_fd_step(double h) const;
  VectorField with_domain(DomainFn inside) const;
  VectorField without_analytic_jacobian() const;

  /// u(x). Throws SingularPoint within kSingularGuard of the singular set, OutOfDomain
  /// for points of the wrong dimension or outside a restricted domain.
  Value evaluate(const Point& x) const;

  /// Analytic gradient when available, otherwise central differences with step
  /// fd_step * max(1, |x|). Throws StencilCrossesSingularity when a stencil node could
  /// reach the singular set, NonFinite for NaN/Inf entries.
  JacobianMatrix jacobian_at(const Point& x) const;

 private:
  void check_point(const Point& x) const;

  int n_;
  int m_;
  ValueFn value_;
  JacobianFn jacobian_;
  SingularSet singular_;
  bool sphere_valued_;
  std::string name_;
  DomainFn domain_;
  double fd_step_ = kDefaultFdStep;
};

/// 2x2 (and, for three-component targets, 3x3) minors of a Jacobian.
///
/// Second-order minors are ordered lexicographically by row pair, then by column pair
/// (for m = 2 that is the usual order on the d(n) = n(n-1)/2 column pairs).
struct MinorVector {
  std::array<double, 18> second{};
  int second_count = 0;
  std::array<double, 4> third{};
  int third_count = 0;

  double second_norm() const;
  /// Frobenius norm of every listed minor.
  double norm() const;
};

MinorVector minors2(const JacobianMatrix& J);

/// sqrt(1 + |J|^2 + |minors|^2): the area density of the graph.
double area_integrand(const JacobianMatrix& J);

enum class FieldKind {
  vortex,               // (cos d theta, sin d theta) in the plane
  planar_vortex,        // x~/|x~| with x = (x~, x^) in R^2 x R^{n-2}
  vortex_chain,         // disjoint vortex disks with alternating orientation
  sphere_vortex,        // x/|x| : B^3 -> S^2
  constant,
  smooth_lift,          // (cos f, sin f) with f smooth
  hedgehog_projection,  // (x1, x2)/|(x1, x2, x3)|, optionally twisted, n = 3 or 4
};

struct FieldParams {
  int n = 2;
  int degree = 1;
  int chain_length = 3;
  Value constant = Value::Zero(2);
  double lift_amplitude = 1.0;
  double twist = 0.0;  // hedgehog_projection: rotate the target by twist * |x~|
};

VectorField make_example_field(FieldKind kind, const FieldParams& params = {});

/// Geometry of the vortex_chain construction: disk j (1-based) has center
/// (1 - 2^{1-j}, 0) and radius 2^{-(j+1)}.
Point vortex_chain_center(int j);
double vortex_chain_radius(int j);

/// Winding direction around disk j of the chain: +1 for odd j, -1 for even j.
int vortex_chain_degree(int j);

}  // namespace relaxarea
