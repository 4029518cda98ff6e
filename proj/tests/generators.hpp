#pragma once

// Small seeded generators for property tests.

#include <cstdint>
#include <random>

#include "relaxarea/types.hpp"

namespace gen {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(eng_); }

  relaxarea::JacobianMatrix matrix(int m, int n, double scale) {
    relaxarea::JacobianMatrix J(m, n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) J(i, j) = scale * normal();
    return J;
  }

  // Uniform point in the ball of radius r, rejection sampled.
  relaxarea::Point in_ball(int n, double r) {
    relaxarea::Point p(n);
    do {
      for (int i = 0; i < n; ++i) p(i) = uniform(-r, r);
    } while (p.norm() > r);
    return p;
  }

  // Point in the annulus r_lo < |x| < r_hi.
  relaxarea::Point in_annulus(int n, double r_lo, double r_hi) {
    relaxarea::Point p;
    do {
      p = in_ball(n, r_hi);
    } while (p.norm() <= r_lo);
    return p;
  }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace gen
