#include <algorithm>
#include <cmath>

#include "relaxarea/recovery.hpp"

namespace relaxarea {

namespace {

Recovered ball_variant(int k) {
  const double rk = 1.0 / k;
  FieldParams p;
  p.n = 3;
  const VectorField input = make_example_field(FieldKind::sphere_vortex, p);
  auto value = [input, k, rk](const Point& x) -> Value {
    if (x.norm() >= rk) return input.evaluate(x);
    return Value(static_cast<double>(k) * x);
  };
  auto jac = [input, k, rk](const Point& x) -> JacobianMatrix {
    if (x.norm() >= rk) return input.jacobian_at(x);
    return static_cast<double>(k) * JacobianMatrix::Identity(3, 3);
  };
  auto modified = [rk](const Point& x) { return x.norm() < rk; };
  VectorField out(3, 3, value, jac, {}, false, "counterexample_ball(k=" + std::to_string(k) + ")");
  return Recovered{out, input, {Domain::ball(3, rk, Point::Zero(3))}, modified};
}

// Colatitude profile of the cylinder variant: identity away from the upper axis, folded
// back to the south pole inside the cone phi < alpha.
struct Fold {
  double alpha;
  double psi(double phi) const { return phi >= alpha ? phi : kPi - (kPi - alpha) * phi / alpha; }
  double dpsi(double phi) const { return phi >= alpha ? 1.0 : -(kPi - alpha) / alpha; }
};

Recovered cylinder_variant(int k) {
  const double rk = 1.0 / k;
  const Fold fold{1.0 / k};
  FieldParams p;
  p.n = 3;
  const VectorField input = make_example_field(FieldKind::sphere_vortex, p);

  struct Sph {
    double r, phi, th;
  };
  auto sph = [](const Point& x) {
    const double r = x.norm();
    return Sph{r, r > 0 ? std::acos(std::clamp(x(2) / r, -1.0, 1.0)) : 0.0, std::atan2(x(1), x(0))};
  };
  // Total colatitude and its partial derivatives in (r, phi).
  auto total = [fold, k, rk](double r, double phi, double& pr, double& pphi) {
    const double ps = fold.psi(phi);
    if (r >= rk) {
      pr = 0.0;
      pphi = fold.dpsi(phi);
      return ps;
    }
    pr = k * (ps - kPi);
    pphi = k * r * fold.dpsi(phi);
    return kPi + k * r * (ps - kPi);
  };
  auto value = [sph, total](const Point& x) -> Value {
    const Sph s = sph(x);
    double pr, pphi;
    const double P = total(s.r, s.phi, pr, pphi);
    Value v(3);
    v << std::sin(P) * std::cos(s.th), std::sin(P) * std::sin(s.th), std::cos(P);
    return v;
  };
  auto jac = [sph, total](const Point& x) -> JacobianMatrix {
    const Sph s = sph(x);
    if (s.r == 0.0) return JacobianMatrix::Zero(3, 3);
    double pr, pphi;
    const double P = total(s.r, s.phi, pr, pphi);
    const double ct = std::cos(s.th), st = std::sin(s.th);
    const Eigen::Vector3d uP(std::cos(P) * ct, std::cos(P) * st, -std::sin(P));
    const Eigen::Vector3d uT(-st, ct, 0.0);
    const Eigen::Vector3d er(std::sin(s.phi) * ct, std::sin(s.phi) * st, std::cos(s.phi));
    const Eigen::Vector3d ep(std::cos(s.phi) * ct, std::cos(s.phi) * st, -std::sin(s.phi));
    // sin(P) / sin(phi) has a finite limit on the axis; evaluate it just off the axis.
    const double phi_c = std::clamp(s.phi, 1e-9, kPi - 1e-9);
    double qr, qphi;
    const double Pc = total(s.r, phi_c, qr, qphi);
    const double ratio = std::sin(Pc) / std::sin(phi_c);
    JacobianMatrix J = uP * (pr * er + (pphi / s.r) * ep).transpose() + (ratio / s.r) * uT * uT.transpose();
    return J;
  };
  auto modified = [sph, rk, fold](const Point& x) {
    const Sph s = sph(x);
    return s.r < rk || s.phi < fold.alpha;
  };
  const Point o = Point::Zero(3);
  VectorField out(3, 3, value, jac, {}, true, "counterexample_cylinder(k=" + std::to_string(k) + ")");
  return Recovered{out,
                   input,
                   {Domain::sector(3, o, 0.0, rk, 0.0, fold.alpha), Domain::sector(3, o, 0.0, rk, fold.alpha, kPi),
                    Domain::sector(3, o, rk, 1.0, 0.0, fold.alpha)},
                   modified};
}

}  // namespace

Recovered counterexample_sequence(CounterexampleVariant variant, int k) {
  if (k < 2) throw Error(ErrorCode::InvalidParams, "counterexample_sequence: need k >= 2");
  return variant == CounterexampleVariant::ball ? ball_variant(k) : cylinder_variant(k);
}

Recovered cylinder_analogue_2d(int k) {
  if (k < 2) throw Error(ErrorCode::InvalidParams, "cylinder_analogue_2d: need k >= 2");
  const double alpha = 1.0 / k;
  const double rk = 1.0 / k;
  const double ta = 0.5 * kPi + 0.5 * alpha;  // the fold occupies the polar band [ta - alpha, ta]
  const double slope = -(kTwoPi - alpha) / alpha;
  const VectorField input = make_example_field(FieldKind::vortex);

  auto psi = [ta, alpha, slope](double theta, double& dpsi) {
    double tt = std::fmod(theta - ta, kTwoPi);
    if (tt < 0) tt += kTwoPi;
    if (tt <= kTwoPi - alpha) {
      dpsi = 1.0;
      return ta + tt;
    }
    dpsi = slope;
    return ta + (kTwoPi - alpha) + slope * (tt - (kTwoPi - alpha));
  };
  auto angle = [psi, k, rk](const Point& x, double& ar, double& ath) {
    const double r = x.norm();
    double dpsi;
    const double P = psi(std::atan2(x(1), x(0)), dpsi);
    if (r >= rk) {
      ar = 0.0;
      ath = dpsi;
      return P;
    }
    ar = k * P;
    ath = k * r * dpsi;
    return k * r * P;
  };
  auto value = [angle](const Point& x) -> Value {
    double ar, ath;
    const double a = angle(x, ar, ath);
    Value v(2);
    v << std::cos(a), std::sin(a);
    return v;
  };
  auto jac = [angle](const Point& x) -> JacobianMatrix {
    const double r = x.norm();
    if (r == 0.0) return JacobianMatrix::Zero(2, 2);
    double ar, ath;
    const double a = angle(x, ar, ath);
    const Eigen::Vector2d er(x(0) / r, x(1) / r), et(-x(1) / r, x(0) / r);
    JacobianMatrix J = Eigen::Vector2d(-std::sin(a), std::cos(a)) * (ar * er + (ath / r) * et).transpose();
    return J;
  };
  auto modified = [rk, ta, alpha](const Point& x) {
    if (x.norm() < rk) return true;
    double t = std::fmod(std::atan2(x(1), x(0)) - (ta - alpha), kTwoPi);
    if (t < 0) t += kTwoPi;
    return t < alpha;
  };
  const Point o = Point::Zero(2);
  VectorField out(2, 2, value, jac, {}, true, "cylinder_analogue_2d(k=" + std::to_string(k) + ")");
  return Recovered{out,
                   input,
                   {Domain::sector(2, o, rk, 1.0, ta - alpha, ta), Domain::sector(2, o, 0.0, rk, ta - alpha, ta),
                    Domain::sector(2, o, 0.0, rk, ta, ta - alpha + kTwoPi)},
                   modified};
}

}  // namespace relaxarea
