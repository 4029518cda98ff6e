#pragma once

#include <Eigen/Dense>

namespace relaxarea {

inline constexpr int kMaxSourceDim = 4;
inline constexpr int kMaxTargetDim = 3;

// Small dynamically sized vectors/matrices with fixed upper bounds: no heap traffic
// in the quadrature inner loops.
using Point = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxSourceDim, 1>;
using Value = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxTargetDim, 1>;
using JacobianMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxTargetDim, kMaxSourceDim>;
using Frame = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxSourceDim, kMaxSourceDim>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

inline Point make_point(std::initializer_list<double> xs) {
  Point p(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) p(i++) = x;
  return p;
}

}  // namespace relaxarea
