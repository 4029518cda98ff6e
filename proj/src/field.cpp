#include "relaxarea/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace relaxarea {

SingularPiece SingularPiece::point(Point p, int degree) {
  SingularPiece s;
  s.kind = Kind::point;
  s.a = std::move(p);
  s.degree = degree;
  return s;
}

SingularPiece SingularPiece::segment(Point a, Point b, int degree) {
  if (a.size() != b.size()) throw Error(ErrorCode::InvalidGeometry, "segment endpoints differ in dimension");
  SingularPiece s;
  s.kind = Kind::segment;
  s.a = std::move(a);
  s.b = std::move(b);
  s.degree = degree;
  return s;
}

SingularPiece SingularPiece::disk(Point center, std::vector<Point> span, double radius, int degree) {
  if (span.size() != 2 || radius <= 0.0) throw Error(ErrorCode::InvalidGeometry, "disk needs two spanning vectors and r > 0");
  SingularPiece s;
  s.kind = Kind::disk;
  s.a = std::move(center);
  s.span = std::move(span);
  s.radius = radius;
  s.degree = degree;
  return s;
}

double SingularPiece::distance(const Point& x) const {
  switch (kind) {
    case Kind::point:
      return (x - a).norm();
    case Kind::segment: {
      const Point d = b - a;
      const double len2 = d.squaredNorm();
      double t = len2 > 0.0 ? (x - a).dot(d) / len2 : 0.0;
      t = std::clamp(t, 0.0, 1.0);
      return (x - a - t * d).norm();
    }
    case Kind::disk: {
      const Point rel = x - a;
      const double p0 = rel.dot(span[0]);
      const double p1 = rel.dot(span[1]);
      const double perp2 = std::max(0.0, rel.squaredNorm() - p0 * p0 - p1 * p1);
      const double in_plane = std::hypot(p0, p1);
      const double over = std::max(0.0, in_plane - radius);
      return std::sqrt(perp2 + over * over);
    }
  }
  return 0.0;
}

double distance_to(const SingularSet& set, const Point& x) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& piece : set) d = std::min(d, piece.distance(x));
  return d;
}

VectorField::VectorField(int n, int m, ValueFn value, JacobianFn jacobian, SingularSet singular,
                         bool sphere_valued, std::string name)
    : n_(n),
      m_(m),
      value_(std::move(value)),
      jacobian_(std::move(jacobian)),
      singular_(std::move(singular)),
      sphere_valued_(sphere_valued),
      name_(std::move(name)) {
  if (n < 2 || n > kMaxSourceDim || m < 2 || m > kMaxTargetDim)
    throw Error(ErrorCode::InvalidParams, "unsupported dimensions n=" + std::to_string(n) + " m=" + std::to_string(m));
  if (!value_) throw Error(ErrorCode::InvalidParams, "field needs an evaluator");
}

VectorField VectorField::with_fd_step(double h) const {
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidParams, "finite-difference step must be positive");
  VectorField copy = *this;
  copy.fd_step_ = h;
  return copy;
}

VectorField VectorField::with_domain(DomainFn inside) const {
  VectorField copy = *this;
  copy.domain_ = std::move(inside);
  return copy;
}

VectorField VectorField::without_analytic_jacobian() const {
  VectorField copy = *this;
  copy.jacobian_ = nullptr;
  return copy;
}

void VectorField::check_point(const Point& x) const {
  if (x.size() != n_) throw Error(ErrorCode::OutOfDomain, "point has dimension " + std::to_string(x.size()));
  if (!x.allFinite()) throw Error(ErrorCode::OutOfDomain, "non-finite coordinates");
  if (domain_ && !domain_(x)) throw Error(ErrorCode::OutOfDomain, "point outside the field's domain");
  if (!singular_.empty() && distance_to(singular_, x) <= kSingularGuard)
    throw Error(ErrorCode::SingularPoint, name_ + " evaluated on its singular set");
}

Value VectorField::evaluate(const Point& x) const {
  check_point(x);
  Value v = value_(x);
  if (v.size() != m_) throw Error(ErrorCode::InvalidParams, "evaluator returned wrong dimension");
  if (!v.allFinite()) throw Error(ErrorCode::NonFinite, name_ + " returned a non-finite value");
  return v;
}

JacobianMatrix VectorField::jacobian_at(const Point& x) const {
  check_point(x);
  JacobianMatrix J;
  if (jacobian_) {
    J = jacobian_(x);
    if (J.rows() != m_ || J.cols() != n_) throw Error(ErrorCode::InvalidParams, "jacobian has wrong shape");
  } else {
    const double h = fd_step_ * std::max(1.0, x.norm());
    if (!singular_.empty() && distance_to(singular_, x) <= 2.0 * h)
      throw Error(ErrorCode::StencilCrossesSingularity, name_ + ": stencil reaches the singular set");
    J.resize(m_, n_);
    for (int j = 0; j < n_; ++j) {
      Point xp = x, xm = x;
      xp(j) += h;
      xm(j) -= h;
      if (domain_ && (!domain_(xp) || !domain_(xm)))
        throw Error(ErrorCode::OutOfDomain, "stencil leaves the field's domain");
      J.col(j) = (value_(xp) - value_(xm)) / (2.0 * h);
    }
  }
  if (!J.allFinite()) throw Error(ErrorCode::NonFinite, name_ + ": non-finite jacobian");
  return J;
}

double MinorVector::second_norm() const {
  double s = 0.0;
  for (int i = 0; i < second_count; ++i) s += second[i] * second[i];
  return std::sqrt(s);
}

double MinorVector::norm() const {
  double s = 0.0;
  for (int i = 0; i < second_count; ++i) s += second[i] * second[i];
  for (int i = 0; i < third_count; ++i) s += third[i] * third[i];
  return std::sqrt(s);
}

MinorVector minors2(const JacobianMatrix& J) {
  MinorVector out;
  const int m = static_cast<int>(J.rows());
  const int n = static_cast<int>(J.cols());
  for (int r0 = 0; r0 < m; ++r0)
    for (int r1 = r0 + 1; r1 < m; ++r1)
      for (int c0 = 0; c0 < n; ++c0)
        for (int c1 = c0 + 1; c1 < n; ++c1)
          out.second[out.second_count++] = J(r0, c0) * J(r1, c1) - J(r0, c1) * J(r1, c0);
  if (m == 3) {
    for (int c0 = 0; c0 < n; ++c0)
      for (int c1 = c0 + 1; c1 < n; ++c1)
        for (int c2 = c1 + 1; c2 < n; ++c2) {
          Eigen::Matrix3d sub;
          sub.col(0) = J.col(c0);
          sub.col(1) = J.col(c1);
          sub.col(2) = J.col(c2);
          out.third[out.third_count++] = sub.determinant();
        }
  }
  return out;
}

double area_integrand(const JacobianMatrix& J) {
  const double mn = minors2(J).norm();
  return std::sqrt(1.0 + J.squaredNorm() + mn * mn);
}

}  // namespace relaxarea
