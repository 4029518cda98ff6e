#include <cmath>
#include <string>

#include "relaxarea/field.hpp"

namespace relaxarea {

namespace {

Value vec2(double a, double b) {
  Value v(2);
  v << a, b;
  return v;
}

VectorField make_vortex(int d) {
  auto value = [d](const Point& x) {
    const double t = d * std::atan2(x(1), x(0));
    return vec2(std::cos(t), std::sin(t));
  };
  auto jac = [d](const Point& x) {
    const double r2 = x(0) * x(0) + x(1) * x(1);
    const double t = d * std::atan2(x(1), x(0));
    const double gx = -x(1) / r2, gy = x(0) / r2;
    JacobianMatrix J(2, 2);
    J << -d * std::sin(t) * gx, -d * std::sin(t) * gy, d * std::cos(t) * gx, d * std::cos(t) * gy;
    return J;
  };
  SingularSet s;
  if (d != 0) s.push_back(SingularPiece::point(Point::Zero(2), d));
  return VectorField(2, 2, value, jac, std::move(s), true, "vortex(d=" + std::to_string(d) + ")");
}

VectorField make_planar_vortex(int n) {
  if (n < 2 || n > 4) throw Error(ErrorCode::InvalidParams, "planar_vortex needs 2 <= n <= 4");
  auto value = [](const Point& x) {
    const double rho = std::hypot(x(0), x(1));
    return vec2(x(0) / rho, x(1) / rho);
  };
  auto jac = [n](const Point& x) {
    const double rho = std::hypot(x(0), x(1));
    const double u0 = x(0) / rho, u1 = x(1) / rho;
    JacobianMatrix J = JacobianMatrix::Zero(2, n);
    J(0, 0) = (1.0 - u0 * u0) / rho;
    J(0, 1) = -u0 * u1 / rho;
    J(1, 0) = -u0 * u1 / rho;
    J(1, 1) = (1.0 - u1 * u1) / rho;
    return J;
  };
  SingularSet s;
  if (n == 2) {
    s.push_back(SingularPiece::point(Point::Zero(2), 1));
  } else if (n == 3) {
    s.push_back(SingularPiece::segment(make_point({0, 0, -1}), make_point({0, 0, 1}), 1));
  } else {
    s.push_back(SingularPiece::disk(Point::Zero(4), {make_point({0, 0, 1, 0}), make_point({0, 0, 0, 1})}, 1.0, 1));
  }
  return VectorField(n, 2, value, jac, std::move(s), true, "planar_vortex(n=" + std::to_string(n) + ")");
}

VectorField make_sphere_vortex() {
  auto value = [](const Point& x) -> Value { return x / x.norm(); };
  auto jac = [](const Point& x) -> JacobianMatrix {
    const double r = x.norm();
    const Eigen::Vector3d u = x / r;
    return (Eigen::Matrix3d::Identity() - u * u.transpose()) / r;
  };
  return VectorField(3, 3, value, jac, {SingularPiece::point(Point::Zero(3), 1)}, true, "sphere_vortex");
}

VectorField make_constant(const FieldParams& p) {
  const Value c = p.constant;
  if (c.size() < 2 || c.size() > 3) throw Error(ErrorCode::InvalidParams, "constant value must have 2 or 3 components");
  if (p.n < 2 || p.n > 4) throw Error(ErrorCode::InvalidParams, "constant field needs 2 <= n <= 4");
  const int n = p.n;
  const int m = static_cast<int>(c.size());
  const bool unit = std::abs(c.norm() - 1.0) <= 1e-12;
  return VectorField(
      n, m, [c](const Point&) { return c; }, [n, m](const Point&) -> JacobianMatrix { return JacobianMatrix::Zero(m, n); },
      {}, unit, "constant");
}

// f(x) = a (sin(1.3 x0 + 0.4) + 0.5 cos(0.9 x1 - 0.2) + 0.3 x0 x1 + sum_{i>=2} 0.6 sin(1.1 xi + 0.3 x0))
VectorField make_smooth_lift(const FieldParams& p) {
  if (p.n < 2 || p.n > 4) throw Error(ErrorCode::InvalidParams, "smooth_lift needs 2 <= n <= 4");
  const int n = p.n;
  const double a = p.lift_amplitude;
  auto phase = [n, a](const Point& x, Point* grad) {
    double f = std::sin(1.3 * x(0) + 0.4) + 0.5 * std::cos(0.9 * x(1) - 0.2) + 0.3 * x(0) * x(1);
    if (grad) {
      grad->setZero(n);
      (*grad)(0) = 1.3 * std::cos(1.3 * x(0) + 0.4) + 0.3 * x(1);
      (*grad)(1) = -0.45 * std::sin(0.9 * x(1) - 0.2) + 0.3 * x(0);
    }
    for (int i = 2; i < n; ++i) {
      const double arg = 1.1 * x(i) + 0.3 * x(0);
      f += 0.6 * std::sin(arg);
      if (grad) {
        (*grad)(i) += 0.66 * std::cos(arg);
        (*grad)(0) += 0.18 * std::cos(arg);
      }
    }
    if (grad) *grad *= a;
    return a * f;
  };
  auto value = [phase](const Point& x) {
    const double f = phase(x, nullptr);
    return vec2(std::cos(f), std::sin(f));
  };
  auto jac = [phase, n](const Point& x) {
    Point g;
    const double f = phase(x, &g);
    JacobianMatrix J(2, n);
    J.row(0) = -std::sin(f) * g.transpose();
    J.row(1) = std::cos(f) * g.transpose();
    return J;
  };
  return VectorField(n, 2, value, jac, {}, true, "smooth_lift");
}

// (x0, x1)/|(x0, x1, x2)| rotated in the target by twist * |(x0, x1, x2)|.
VectorField make_hedgehog(const FieldParams& p) {
  if (p.n != 3 && p.n != 4) throw Error(ErrorCode::InvalidParams, "hedgehog_projection needs n = 3 or 4");
  const int n = p.n;
  const double tw = p.twist;
  auto value = [tw](const Point& x) {
    const double s = std::sqrt(x(0) * x(0) + x(1) * x(1) + x(2) * x(2));
    const double w0 = x(0) / s, w1 = x(1) / s;
    const double c = std::cos(tw * s), sn = std::sin(tw * s);
    return vec2(c * w0 - sn * w1, sn * w0 + c * w1);
  };
  auto jac = [tw, n](const Point& x) {
    const double s = std::sqrt(x(0) * x(0) + x(1) * x(1) + x(2) * x(2));
    const double w0 = x(0) / s, w1 = x(1) / s;
    const double c = std::cos(tw * s), sn = std::sin(tw * s);
    JacobianMatrix J = JacobianMatrix::Zero(2, n);
    for (int j = 0; j < 3; ++j) {
      const double dw0 = ((j == 0 ? 1.0 : 0.0) - w0 * x(j) / s) / s;
      const double dw1 = ((j == 1 ? 1.0 : 0.0) - w1 * x(j) / s) / s;
      const double dphi = tw * x(j) / s;
      J(0, j) = c * dw0 - sn * dw1 + dphi * (-sn * w0 - c * w1);
      J(1, j) = sn * dw0 + c * dw1 + dphi * (c * w0 - sn * w1);
    }
    return J;
  };
  SingularSet set;
  if (n == 3) {
    set.push_back(SingularPiece::point(Point::Zero(3)));
  } else {
    set.push_back(SingularPiece::segment(make_point({0, 0, 0, -1}), make_point({0, 0, 0, 1})));
  }
  return VectorField(n, 2, value, jac, std::move(set), false, "hedgehog_projection(n=" + std::to_string(n) + ")");
}

// The chain is built with the ambient vortices x - c_j; the target is then rotated by
// -pi/2 so that the horizontal sides of every square carry (1,0) (top) and (-1,0) (bottom).
struct ChainGeometry {
  int m;

  double left(int j) const { return vortex_chain_center(j)(0) - vortex_chain_radius(j); }
  double right(int j) const { return vortex_chain_center(j)(0) + vortex_chain_radius(j); }

  // Pre-rotation value and gradient.
  void eval(const Point& x, Value& v, JacobianMatrix* J) const {
    const double x0 = x(0), y = x(1);
    v.resize(2);
    if (J) J->setZero(2, 2);
    auto side = [&](double sigma, double H, double dHdx) {
      // (sigma sqrt(1 - s^2), s) with s = y / H.
      if (std::abs(y) >= H) {
        v = vec2(0.0, y > 0 ? 1.0 : -1.0);
        return;
      }
      const double s = y / H;
      const double c = std::sqrt(1.0 - s * s);
      v = vec2(sigma * c, s);
      if (J) {
        const double dsdx = -y * dHdx / (H * H);
        const double dsdy = 1.0 / H;
        const double dc = c > 0.0 ? -sigma * s / c : 0.0;
        (*J) << dc * dsdx, dc * dsdy, dsdx, dsdy;
      }
    };
    if (x0 < left(1)) {
      side(-1.0, vortex_chain_radius(1), 0.0);
      return;
    }
    for (int j = 1; j <= m; ++j) {
      const int sigma = vortex_chain_degree(j);
      if (x0 <= right(j)) {
        const double R = vortex_chain_radius(j);
        const double dx = x0 - vortex_chain_center(j)(0);
        const double rho = std::hypot(dx, y);
        if (rho < R) {
          v = vec2(sigma * dx / rho, y / rho);
          if (J) {
            const double w0 = dx / rho, w1 = y / rho;
            (*J) << sigma * (1.0 - w0 * w0) / rho, -sigma * w0 * w1 / rho, -w0 * w1 / rho, (1.0 - w1 * w1) / rho;
          }
        } else {
          side(dx >= 0 ? sigma : -sigma, R, 0.0);
        }
        return;
      }
      if (j < m && x0 < left(j + 1)) {
        const double a = right(j), b = left(j + 1);
        const double Ra = vortex_chain_radius(j), Rb = vortex_chain_radius(j + 1);
        const double lam = (x0 - a) / (b - a);
        side(sigma, (1.0 - lam) * Ra + lam * Rb, (Rb - Ra) / (b - a));
        return;
      }
    }
    side(vortex_chain_degree(m), vortex_chain_radius(m), 0.0);
  }
};

VectorField make_vortex_chain(int m) {
  if (m < 1 || m > 40) throw Error(ErrorCode::InvalidParams, "vortex_chain needs 1 <= m <= 40");
  const ChainGeometry g{m};
  auto value = [g](const Point& x) {
    Value v;
    g.eval(x, v, nullptr);
    return vec2(v(1), -v(0));
  };
  auto jac = [g](const Point& x) {
    Value v;
    JacobianMatrix J0;
    g.eval(x, v, &J0);
    JacobianMatrix J(2, 2);
    J.row(0) = J0.row(1);
    J.row(1) = -J0.row(0);
    return J;
  };
  SingularSet s;
  for (int j = 1; j <= m; ++j) s.push_back(SingularPiece::point(vortex_chain_center(j), vortex_chain_degree(j)));
  return VectorField(2, 2, value, jac, std::move(s), true, "vortex_chain(m=" + std::to_string(m) + ")");
}

}  // namespace

Point vortex_chain_center(int j) { return make_point({1.0 - std::ldexp(1.0, 1 - j), 0.0}); }
double vortex_chain_radius(int j) { return std::ldexp(1.0, -(j + 1)); }
int vortex_chain_degree(int j) { return (j % 2 == 1) ? 1 : -1; }

VectorField make_example_field(FieldKind kind, const FieldParams& params) {
  switch (kind) {
    case FieldKind::vortex:
      if (params.n != 2) throw Error(ErrorCode::InvalidParams, "vortex is planar (n = 2)");
      return make_vortex(params.degree);
    case FieldKind::planar_vortex:
      return make_planar_vortex(params.n);
    case FieldKind::vortex_chain:
      return make_vortex_chain(params.chain_length);
    case FieldKind::sphere_vortex:
      return make_sphere_vortex();
    case FieldKind::constant:
      return make_constant(params);
    case FieldKind::smooth_lift:
      return make_smooth_lift(params);
    case FieldKind::hedgehog_projection:
      return make_hedgehog(params);
  }
  throw Error(ErrorCode::InvalidParams, "unknown field kind");
}

}  // namespace relaxarea
