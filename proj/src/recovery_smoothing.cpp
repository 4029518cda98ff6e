#include <cmath>
#include <memory>

#include "lift.hpp"
#include "relaxarea/recovery.hpp"

namespace relaxarea {

namespace {

void accumulate(QuadratureResult& into, const QuadratureResult& r) {
  into.value += r.value;
  into.error_estimate += r.error_estimate;
  into.nodes_used += r.nodes_used;
  into.converged = into.converged && r.converged;
  into.monte_carlo = into.monte_carlo || r.monte_carlo;
}

Value vec2(double a, double b) {
  Value v(2);
  v << a, b;
  return v;
}

constexpr int kLiftSamples = 512;
constexpr int kLiftRows = 64;

}  // namespace

EnergyMetrics piece_energies(const Recovered& rec, const QuadratureOptions& options, bool use_input) {
  EnergyMetrics total;
  total.area.converged = total.tv.converged = total.graph_bv.converged = total.minors.converged = true;
  for (const auto& piece : rec.pieces) {
    const EnergyMetrics e = energy_metrics(use_input ? rec.input : rec.field, piece, options);
    accumulate(total.area, e.area);
    accumulate(total.tv, e.tv);
    accumulate(total.graph_bv, e.graph_bv);
    accumulate(total.minors, e.minors);
  }
  return total;
}

Recovered vortex_smoothing_2d(const VectorField& field, const Point& center, int d, double eps) {
  if (field.source_dim() != 2 || field.target_dim() != 2)
    throw Error(ErrorCode::InvalidParams, "vortex_smoothing_2d needs a planar S^1-valued field");
  if (center.size() != 2 || !(eps > 0.0)) throw Error(ErrorCode::InvalidParams, "vortex_smoothing_2d: bad center or eps");
  auto curve = [center, eps](double th, double, Point& y, Point& dy0, Point& dy1) {
    y = center + eps * make_point({std::cos(th), std::sin(th)});
    dy0 = eps * make_point({-std::sin(th), std::cos(th)});
    dy1 = Point::Zero(2);
  };
  auto lift = std::make_shared<const detail::TraceLift>(field, curve, d, 0.0, 0.0, kLiftSamples, 1);

  auto value = [field, center, eps, d, lift](const Point& x) -> Value {
    const Point y = x - center;
    const double rho = y.norm();
    if (rho >= eps) return field.evaluate(x);
    const double th = std::atan2(y(1), y(0));
    if (rho <= 0.5 * eps) {
      const double a = 2.0 * rho / eps;
      return vec2(a * std::cos(d * th), a * std::sin(d * th));
    }
    const double lam = 2.0 * rho / eps - 1.0;
    const double phi = (1.0 - lam) * d * th + lam * lift->eval(th, 0.0, false).L;
    return vec2(std::cos(phi), std::sin(phi));
  };
  auto jac = [field, center, eps, d, lift](const Point& x) -> JacobianMatrix {
    const Point y = x - center;
    const double rho = y.norm();
    if (rho >= eps) return field.jacobian_at(x);
    JacobianMatrix J(2, 2);
    if (rho == 0.0) {
      J = (d == 1 ? 2.0 / eps : 0.0) * JacobianMatrix::Identity(2, 2);
      if (d == -1) J << 2.0 / eps, 0.0, 0.0, -2.0 / eps;
      return J;
    }
    const double th = std::atan2(y(1), y(0));
    const Eigen::Vector2d grho(y(0) / rho, y(1) / rho);
    const Eigen::Vector2d gth(-y(1) / (rho * rho), y(0) / (rho * rho));
    if (rho <= 0.5 * eps) {
      const Eigen::Vector2d e(std::cos(d * th), std::sin(d * th)), ep(-std::sin(d * th), std::cos(d * th));
      J = (2.0 / eps) * (e * grho.transpose() + rho * d * ep * gth.transpose());
      return J;
    }
    const double lam = 2.0 * rho / eps - 1.0;
    const auto s = lift->eval(th, 0.0, true);
    const double phi = (1.0 - lam) * d * th + lam * s.L;
    const Eigen::Vector2d gphi = (2.0 / eps) * (s.L - d * th) * grho + ((1.0 - lam) * d + lam * s.L_theta) * gth;
    const Eigen::Vector2d ep(-std::sin(phi), std::cos(phi));
    J = ep * gphi.transpose();
    return J;
  };
  auto modified = [center, eps](const Point& x) { return (x - center).norm() < eps; };
  VectorField out(2, 2, value, jac, detail::keep_outside(field.singular_set(), modified), false,
                  "vortex_smoothing_2d(eps=" + std::to_string(eps) + ")");
  return Recovered{out, field, {Domain::annulus(2, 0.5 * eps, eps, center), Domain::ball(2, 0.5 * eps, center)},
                   modified};
}

Recovered cone_dipole(const VectorField& field, const Point& a, const Point& b, int d, double eps,
                      DipoleProfile profile) {
  if (field.source_dim() != 3 || field.target_dim() != 2)
    throw Error(ErrorCode::InvalidParams, "cone_dipole needs a field R^3 -> R^2");
  if (!(eps > 0.0) || eps > 1.0) throw Error(ErrorCode::InvalidGeometry, "cone_dipole: need 0 < eps <= 1");
  const Domain cone = Domain::cone_over_segment(a, b, eps);
  const ConeSpec spec = cone.cone_spec();
  const Point c = spec.center;
  const Frame F = spec.frame;
  const double L = spec.half_length;

  auto curve = [c, F, L, eps](double th, double t, Point& y, Point& dy0, Point& dy1) {
    const double r = eps * (L - std::abs(t));
    const double dr = t > 0 ? -eps : (t < 0 ? eps : 0.0);
    y = c + F * make_point({r * std::cos(th), r * std::sin(th), t});
    dy0 = F * make_point({-r * std::sin(th), r * std::cos(th), 0.0});
    dy1 = F * make_point({dr * std::cos(th), dr * std::sin(th), 1.0});
  };
  std::shared_ptr<const detail::TraceLift> lift;
  if (profile == DipoleProfile::shell_core)
    lift = std::make_shared<const detail::TraceLift>(field, curve, d, -L, L, kLiftSamples, kLiftRows);

  struct Local {
    Eigen::Vector3d y;
    double rho, r, dr, s, th;
    bool inside;
  };
  auto local = [c, F, L, eps](const Point& x) {
    Local l;
    l.y = F.transpose() * (x - c);
    const double t = l.y(2);
    l.rho = std::hypot(l.y(0), l.y(1));
    l.r = eps * (L - std::abs(t));
    l.dr = t > 0 ? -eps : (t < 0 ? eps : 0.0);
    l.inside = std::abs(t) < L && l.rho < l.r;
    l.s = l.inside ? l.rho / l.r : 0.0;
    l.th = std::atan2(l.y(1), l.y(0));
    return l;
  };

  auto value = [field, local, d, lift, profile](const Point& x) -> Value {
    const Local l = local(x);
    if (!l.inside) return field.evaluate(x);
    if (profile == DipoleProfile::model) return l.s * field.evaluate(x);
    if (l.s <= 0.5) return vec2(2.0 * l.s * std::cos(d * l.th), 2.0 * l.s * std::sin(d * l.th));
    const double lam = 2.0 * l.s - 1.0;
    const double phi = (1.0 - lam) * d * l.th + lam * lift->eval(l.th, l.y(2), false).L;
    return vec2(std::cos(phi), std::sin(phi));
  };
  auto jac = [field, local, d, lift, profile, F](const Point& x) -> JacobianMatrix {
    const Local l = local(x);
    if (!l.inside) return field.jacobian_at(x);
    Eigen::Matrix<double, 2, 3> Jl;
    if (l.rho == 0.0) {
      Jl.setZero();
      if (profile == DipoleProfile::shell_core && std::abs(d) == 1) {
        Jl(0, 0) = 2.0 / l.r;
        Jl(1, 1) = 2.0 * d / l.r;
      }
    } else {
      const Eigen::Vector3d gs(l.y(0) / (l.rho * l.r), l.y(1) / (l.rho * l.r), -l.rho * l.dr / (l.r * l.r));
      const Eigen::Vector3d gth(-l.y(1) / (l.rho * l.rho), l.y(0) / (l.rho * l.rho), 0.0);
      if (profile == DipoleProfile::model) {
        const Value u = field.evaluate(x);
        const JacobianMatrix Ju = field.jacobian_at(x);
        JacobianMatrix J = Eigen::Vector2d(u(0), u(1)) * (F * gs).transpose() + l.s * Ju;
        return J;
      }
      if (l.s <= 0.5) {
        const Eigen::Vector2d e(std::cos(d * l.th), std::sin(d * l.th)), ep(-std::sin(d * l.th), std::cos(d * l.th));
        Jl = 2.0 * e * gs.transpose() + 2.0 * l.s * d * ep * gth.transpose();
      } else {
        const double lam = 2.0 * l.s - 1.0;
        const auto sm = lift->eval(l.th, l.y(2), true);
        const double phi = (1.0 - lam) * d * l.th + lam * sm.L;
        const Eigen::Vector3d gphi = 2.0 * (sm.L - d * l.th) * gs + ((1.0 - lam) * d + lam * sm.L_theta) * gth +
                                     Eigen::Vector3d(0.0, 0.0, lam * sm.L_t);
        Jl = Eigen::Vector2d(-std::sin(phi), std::cos(phi)) * gphi.transpose();
      }
    }
    JacobianMatrix J = Jl * F.transpose();
    return J;
  };
  auto modified = [local](const Point& x) { return local(x).inside; };
  SingularSet sing;
  if (profile == DipoleProfile::shell_core) {
    sing = detail::keep_outside(field.singular_set(), modified);
    // The cone tips are the only points where the construction is discontinuous.
    sing.push_back(SingularPiece::point(c - L * F.col(2)));
    sing.push_back(SingularPiece::point(c + L * F.col(2)));
  } else {
    sing = field.singular_set();
  }
  VectorField out(3, 2, value, jac, std::move(sing), false, "cone_dipole(eps=" + std::to_string(eps) + ")");
  std::vector<Domain> pieces;
  if (profile == DipoleProfile::shell_core) {
    pieces.push_back(Domain::cone_over_segment(a, b, eps, 0.5, 1.0));
    pieces.push_back(Domain::cone_over_segment(a, b, eps, 0.0, 0.5));
  } else {
    pieces.push_back(cone);
  }
  return Recovered{out, field, pieces, modified};
}

}  // namespace relaxarea
