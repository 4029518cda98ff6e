#include <algorithm>
#include <cmath>

#include "lift.hpp"

namespace relaxarea::detail {

namespace {

double cross2(const Value& a, const Value& b) { return a(0) * b(1) - a(1) * b(0); }

}  // namespace

TraceLift::TraceLift(const VectorField& field, Curve curve, int degree, double t_lo, double t_hi, int n_theta,
                     int n_t)
    : field_(field),
      curve_(std::move(curve)),
      degree_(degree),
      t_lo_(t_lo),
      t_hi_(t_hi),
      n_theta_(n_theta),
      n_t_(n_t),
      table_(static_cast<std::size_t>(n_theta) * static_cast<std::size_t>(n_t)) {
  if (field.target_dim() != 2) throw Error(ErrorCode::InvalidParams, "angle lifts need a planar target");
  Point y, dy0, dy1;
  for (int j = 0; j < n_t_; ++j) {
    const double t = n_t_ == 1 ? t_lo_ : t_lo_ + (j + 0.5) * (t_hi_ - t_lo_) / n_t_;
    double* row = &table_[static_cast<std::size_t>(j) * n_theta_];
    double first = 0.0, prev = 0.0, acc = 0.0;
    for (int i = 0; i < n_theta_; ++i) {
      const double theta = -kPi + kTwoPi * i / n_theta_;
      curve_(theta, t, y, dy0, dy1);
      const Value u = field_.evaluate(y);
      const double a = std::atan2(u(1), u(0));
      if (i == 0) {
        first = prev = a;
        acc = a;
      } else {
        const double step = std::remainder(a - prev, kTwoPi);
        if (std::abs(step) >= 0.5 * kPi)
          throw Error(ErrorCode::DegreeMismatch, "trace turns too fast for the lift table");
        acc += step;
        prev = a;
      }
      row[i] = acc;
    }
    const double closing = acc + std::remainder(first - prev, kTwoPi);
    const long winding = std::lround((closing - row[0]) / kTwoPi);
    if (winding != degree_)
      throw Error(ErrorCode::DegreeMismatch,
                  "trace has degree " + std::to_string(winding) + ", expected " + std::to_string(degree_));
    if (j > 0) {
      const double* above = row - n_theta_;
      const double shift = kTwoPi * std::round((above[0] - row[0]) / kTwoPi);
      for (int i = 0; i < n_theta_; ++i) row[i] += shift;
    }
  }
}

double TraceLift::table_value(double theta, double t) const {
  const double f = (theta + kPi) / kTwoPi * n_theta_;
  int i0 = static_cast<int>(std::floor(f));
  i0 = std::clamp(i0, 0, n_theta_ - 1);
  const double w = f - i0;
  auto at = [&](int row, int i) {
    const double* r = &table_[static_cast<std::size_t>(row) * n_theta_];
    return i < n_theta_ ? r[i] : r[0] + kTwoPi * degree_;
  };
  auto row_value = [&](int row) { return (1.0 - w) * at(row, i0) + w * at(row, i0 + 1); };
  if (n_t_ == 1) return row_value(0);
  double g = (t - t_lo_) / (t_hi_ - t_lo_) * n_t_ - 0.5;
  g = std::clamp(g, 0.0, static_cast<double>(n_t_ - 1));
  const int j0 = std::min(static_cast<int>(std::floor(g)), n_t_ - 2);
  const double v = g - j0;
  return (1.0 - v) * row_value(j0) + v * row_value(j0 + 1);
}

TraceLift::Sample TraceLift::eval(double theta, double t, bool derivatives) const {
  // Reduce theta to [-pi, pi); the lift gains 2 pi d per turn.
  const double turns = std::floor((theta + kPi) / kTwoPi);
  const double base = theta - kTwoPi * turns;
  Point y, dy0, dy1;
  curve_(base, t, y, dy0, dy1);
  const Value u = field_.evaluate(y);
  const double a = std::atan2(u(1), u(0));
  const double ref = table_value(base, t);
  Sample s{};
  s.L = a + kTwoPi * std::round((ref - a) / kTwoPi) + kTwoPi * degree_ * turns;
  if (derivatives) {
    const JacobianMatrix J = field_.jacobian_at(y);
    const double n2 = u.squaredNorm();
    s.L_theta = cross2(u, J * dy0) / n2;
    s.L_t = n_t_ == 1 ? 0.0 : cross2(u, J * dy1) / n2;
  }
  return s;
}

}  // namespace relaxarea::detail
