#pragma once

#include <functional>
#include <vector>

#include "relaxarea/field.hpp"

namespace relaxarea::detail {

/// Continuous angle lift of theta -> u(gamma(theta, t)) on a family of closed curves.
///
/// The table only selects the branch: every query evaluates u on the curve and returns
/// its exact angle on the branch nearest to the interpolated table value, so the lift
/// reproduces u exactly and its derivatives come from the Jacobian of u.
class TraceLift {
 public:
  using Curve = std::function<void(double theta, double t, Point& y, Point& dy_dtheta, Point& dy_dt)>;

  TraceLift(const VectorField& field, Curve curve, int degree, double t_lo, double t_hi, int n_theta, int n_t);

  struct Sample {
    double L;
    double L_theta;
    double L_t;
  };

  Sample eval(double theta, double t, bool derivatives) const;
  int degree() const noexcept { return degree_; }

 private:
  double table_value(double theta, double t) const;

  VectorField field_;
  Curve curve_;
  int degree_;
  double t_lo_, t_hi_;
  int n_theta_, n_t_;
  std::vector<double> table_;  // n_t rows of n_theta lifted angles
};

/// Singular pieces of `set` not swallowed by a modification region (segments are
/// judged by their midpoint, disks by their center).
inline SingularSet keep_outside(const SingularSet& set, const std::function<bool(const Point&)>& modified) {
  SingularSet out;
  for (const auto& p : set) {
    const Point probe = p.kind == SingularPiece::Kind::segment ? Point(0.5 * (p.a + p.b)) : p.a;
    if (!modified(probe)) out.push_back(p);
  }
  return out;
}

}  // namespace relaxarea::detail
