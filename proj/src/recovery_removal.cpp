#include <cmath>

#include "lift.hpp"
#include "relaxarea/recovery.hpp"

namespace relaxarea {

Recovered remove_point_singularity(const VectorField& field, const Point& center, double r, double delta) {
  const int n = field.source_dim();
  if (center.size() != n) throw Error(ErrorCode::InvalidParams, "remove_point_singularity: center dimension");
  if (!(r > 0.0) || !(delta > 0.0) || delta >= r)
    throw Error(ErrorCode::InvalidGeometry, "remove_point_singularity: need 0 < delta < r");

  auto value = [field, center, r, delta](const Point& x) -> Value {
    const Point y = x - center;
    const double a = y.norm();
    if (a >= r) return field.evaluate(x);
    if (a == 0.0) return Value::Zero(field.target_dim());
    const Value w = field.evaluate(center + (r / a) * y);
    return a >= delta ? w : Value((a / delta) * w);
  };
  auto jac = [field, center, r, delta, n](const Point& x) -> JacobianMatrix {
    const Point y = x - center;
    const double a = y.norm();
    if (a >= r) return field.jacobian_at(x);
    if (a == 0.0) return JacobianMatrix::Zero(field.target_dim(), n);
    const Point yh = y / a;
    const Point p = center + r * yh;
    const Frame DP = (r / a) * (Frame::Identity(n, n) - yh * yh.transpose());
    const JacobianMatrix Jw = field.jacobian_at(p) * DP;
    if (a >= delta) return Jw;
    const Value w = field.evaluate(p);
    JacobianMatrix J = w * (yh / delta).transpose() + (a / delta) * Jw;
    return J;
  };
  auto modified = [center, r](const Point& x) { return (x - center).norm() < r; };
  VectorField out(n, field.target_dim(), value, jac, detail::keep_outside(field.singular_set(), modified), false,
                  "remove_point_singularity(r=" + std::to_string(r) + ")");
  return Recovered{out, field, {Domain::annulus(n, delta, r, center), Domain::ball(n, delta, center)}, modified};
}

Recovered homogeneous_cone_extension(const VectorField& field, const Point& a, const Point& b, double eps,
                                     double delta) {
  if (field.source_dim() != 4) throw Error(ErrorCode::InvalidParams, "homogeneous_cone_extension needs n = 4");
  if (!(eps > 0.0) || eps > 1.0 || !(delta > 0.0) || delta >= eps)
    throw Error(ErrorCode::InvalidGeometry, "homogeneous_cone_extension: need 0 < delta < eps <= 1");
  const Domain cone = Domain::cone_over_segment(a, b, eps);
  const ConeSpec spec = cone.cone_spec();
  const Point c = spec.center;
  const Frame F = spec.frame;
  const double L = spec.half_length;
  const double s_core = delta / eps;
  const int m = field.target_dim();

  struct Local {
    Eigen::Vector4d y;
    Eigen::Vector3d xh;
    double rho, r, dr;
    bool inside;
  };
  auto local = [c, F, L, eps](const Point& x) {
    Local l;
    l.y = F.transpose() * (x - c);
    const double t = l.y(3);
    l.rho = l.y.head<3>().norm();
    l.r = eps * (L - std::abs(t));
    l.dr = t > 0 ? -eps : (t < 0 ? eps : 0.0);
    l.inside = std::abs(t) < L && l.rho < l.r;
    l.xh = l.rho > 0.0 ? Eigen::Vector3d(l.y.head<3>() / l.rho) : Eigen::Vector3d::Zero();
    return l;
  };
  // Radial projection onto the cone surface.
  auto project = [c, F](const Local& l) {
    Eigen::Vector4d q;
    q << l.r * l.xh, l.y(3);
    return Point(c + F * q);
  };

  auto value = [field, local, project, s_core, m](const Point& x) -> Value {
    const Local l = local(x);
    if (!l.inside) return field.evaluate(x);
    if (l.rho == 0.0) return Value::Zero(m);
    const Value w = field.evaluate(project(l));
    const double s = l.rho / l.r;
    return s >= s_core ? w : Value((s / s_core) * w);
  };
  auto jac = [field, local, project, s_core, m, F](const Point& x) -> JacobianMatrix {
    const Local l = local(x);
    if (!l.inside) return field.jacobian_at(x);
    if (l.rho == 0.0) return JacobianMatrix::Zero(m, 4);
    Eigen::Matrix4d DPl = Eigen::Matrix4d::Zero();
    DPl.topLeftCorner<3, 3>() = (l.r / l.rho) * (Eigen::Matrix3d::Identity() - l.xh * l.xh.transpose());
    DPl.topRightCorner<3, 1>() = l.dr * l.xh;
    DPl(3, 3) = 1.0;
    const Point p = project(l);
    const JacobianMatrix Jw = field.jacobian_at(p) * (F * DPl * F.transpose());
    const double s = l.rho / l.r;
    if (s >= s_core) return Jw;
    Eigen::Vector4d gs;
    gs << l.xh / l.r, -l.rho * l.dr / (l.r * l.r);
    const Value w = field.evaluate(p);
    JacobianMatrix J = w * (F * gs / s_core).transpose() + (s / s_core) * Jw;
    return J;
  };
  auto modified = [local](const Point& x) { return local(x).inside; };
  SingularSet sing = detail::keep_outside(field.singular_set(), modified);
  sing.push_back(SingularPiece::point(c - L * F.col(3)));
  sing.push_back(SingularPiece::point(c + L * F.col(3)));
  VectorField out(4, m, value, jac, std::move(sing), false,
                  "homogeneous_cone_extension(eps=" + std::to_string(eps) + ")");
  return Recovered{out,
                   field,
                   {Domain::cone_over_segment(a, b, eps, s_core, 1.0), Domain::cone_over_segment(a, b, eps, 0.0, s_core)},
                   modified};
}

}  // namespace relaxarea
