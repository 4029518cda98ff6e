#include "relaxarea/domain.hpp"

#include <algorithm>
#include <cmath>

#include "relaxarea/quadrature.hpp"

namespace relaxarea {

double unit_ball_volume(int n) {
  switch (n) {
    case 1: return 2.0;
    case 2: return kPi;
    case 3: return 4.0 * kPi / 3.0;
    case 4: return kPi * kPi / 2.0;
    default: throw Error(ErrorCode::InvalidParams, "unit_ball_volume: unsupported dimension");
  }
}

double Chart::map(const double* p, Point& x) const {
  x.resize(n);
  switch (kind) {
    case Kind::cartesian:
      for (int i = 0; i < n; ++i) x(i) = p[i];
      return 1.0;
    case Kind::polar: {
      const double r = p[0];
      x(0) = center(0) + r * std::cos(p[1]);
      x(1) = center(1) + r * std::sin(p[1]);
      return r;
    }
    case Kind::spherical: {
      const double r = p[0], sp = std::sin(p[1]);
      x(0) = center(0) + r * sp * std::cos(p[2]);
      x(1) = center(1) + r * sp * std::sin(p[2]);
      x(2) = center(2) + r * std::cos(p[1]);
      return r * r * sp;
    }
    case Kind::hyperspherical: {
      const double r = p[0], s1 = std::sin(p[1]), s2 = std::sin(p[2]);
      x(0) = center(0) + r * std::cos(p[1]);
      x(1) = center(1) + r * s1 * std::cos(p[2]);
      x(2) = center(2) + r * s1 * s2 * std::cos(p[3]);
      x(3) = center(3) + r * s1 * s2 * std::sin(p[3]);
      return r * r * r * s1 * s1 * s2;
    }
    case Kind::cone: {
      const double s = p[0];
      const double t = p[cross_dim];
      const double r = epsilon * (half_length - std::abs(t));
      Point local(n);
      double det;
      if (cross_dim == 2) {
        local(0) = s * r * std::cos(p[1]);
        local(1) = s * r * std::sin(p[1]);
        det = s * r * r;
      } else {
        const double sp = std::sin(p[1]);
        local(0) = s * r * sp * std::cos(p[2]);
        local(1) = s * r * sp * std::sin(p[2]);
        local(2) = s * r * std::cos(p[1]);
        det = s * s * r * r * r * sp;
      }
      local(cross_dim) = t;
      x = center + frame * local;
      return det;
    }
  }
  return 0.0;
}

Domain Domain::ball(int n, double radius, Point center) {
  if (n < 2 || n > kMaxSourceDim || center.size() != n) throw Error(ErrorCode::InvalidGeometry, "ball: bad dimension");
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidGeometry, "ball: radius must be positive");
  Domain d;
  d.kind_ = DomainKind::ball;
  d.n_ = n;
  d.center_ = std::move(center);
  d.r_hi_ = radius;
  return d;
}

Domain Domain::cube(int n, double half_side, Point center) {
  if (n < 2 || n > kMaxSourceDim || center.size() != n) throw Error(ErrorCode::InvalidGeometry, "cube: bad dimension");
  if (!(half_side > 0.0)) throw Error(ErrorCode::InvalidGeometry, "cube: half side must be positive");
  Domain d;
  d.kind_ = DomainKind::cube;
  d.n_ = n;
  d.center_ = std::move(center);
  d.r_hi_ = half_side;
  return d;
}

Domain Domain::annulus(int n, double r_in, double r_out, Point center) {
  if (n < 2 || n > kMaxSourceDim || center.size() != n) throw Error(ErrorCode::InvalidGeometry, "annulus: bad dimension");
  if (!(r_in >= 0.0 && r_in < r_out)) throw Error(ErrorCode::InvalidGeometry, "annulus: need 0 <= r_in < r_out");
  Domain d;
  d.kind_ = DomainKind::annulus;
  d.n_ = n;
  d.center_ = std::move(center);
  d.r_lo_ = r_in;
  d.r_hi_ = r_out;
  return d;
}

Domain Domain::cone(ConeSpec spec) {
  const int n = static_cast<int>(spec.center.size());
  if (spec.cross_dim < 2 || spec.cross_dim > 3 || n != spec.cross_dim + 1)
    throw Error(ErrorCode::InvalidGeometry, "cone: only bases that are segments are supported");
  if (spec.frame.rows() != n || spec.frame.cols() != n ||
      !(spec.frame.transpose() * spec.frame).isApprox(Frame::Identity(n, n), 1e-12))
    throw Error(ErrorCode::InvalidGeometry, "cone: frame must be orthonormal");
  if (!(spec.epsilon > 0.0) || !(spec.half_length > 0.0))
    throw Error(ErrorCode::InvalidGeometry, "cone: aperture and length must be positive");
  if (!(spec.s_lo >= 0.0 && spec.s_lo < spec.s_hi && spec.s_hi <= 1.0))
    throw Error(ErrorCode::InvalidGeometry, "cone: radial band must satisfy 0 <= s_lo < s_hi <= 1");
  Domain d;
  d.kind_ = DomainKind::cone;
  d.n_ = n;
  d.center_ = spec.center;
  d.cone_ = std::move(spec);
  return d;
}

Domain Domain::cone_over_segment(const Point& a, const Point& b, double epsilon, double s_lo, double s_hi) {
  const int n = static_cast<int>(a.size());
  if (b.size() != n || n < 3 || n > 4) throw Error(ErrorCode::InvalidGeometry, "cone: segment must lie in R^3 or R^4");
  const Point axis_vec = b - a;
  const double len = axis_vec.norm();
  if (!(len > 0.0)) throw Error(ErrorCode::InvalidGeometry, "cone: degenerate segment");
  const Point e = axis_vec / len;
  ConeSpec spec;
  spec.center = 0.5 * (a + b);
  spec.cross_dim = n - 1;
  spec.half_length = 0.5 * len;
  spec.epsilon = epsilon;
  spec.s_lo = s_lo;
  spec.s_hi = s_hi;
  spec.frame = Frame::Identity(n, n);
  if ((e - Point::Unit(n, n - 1)).norm() > 1e-15) {
    Frame m = Frame::Identity(n, n);
    m.col(0) = e;
    Eigen::HouseholderQR<Frame> qr(m);
    Frame q = qr.householderQ();
    if (q.col(0).dot(e) < 0) q.col(0) = -q.col(0);
    for (int i = 0; i < n - 1; ++i) spec.frame.col(i) = q.col(i + 1);
    spec.frame.col(n - 1) = e;
    if (spec.frame.determinant() < 0) spec.frame.col(0) = -spec.frame.col(0);
  }
  return cone(std::move(spec));
}

Domain Domain::sector(int n, Point center, double r_lo, double r_hi, double ang_lo, double ang_hi) {
  if ((n != 2 && n != 3) || center.size() != n) throw Error(ErrorCode::InvalidGeometry, "sector: n must be 2 or 3");
  if (!(r_lo >= 0.0 && r_lo < r_hi)) throw Error(ErrorCode::InvalidGeometry, "sector: need 0 <= r_lo < r_hi");
  const double span = ang_hi - ang_lo;
  if (!(span > 0.0) || span > (n == 2 ? kTwoPi : kPi) + 1e-15 || (n == 3 && (ang_lo < 0.0 || ang_hi > kPi + 1e-15)))
    throw Error(ErrorCode::InvalidGeometry, "sector: bad angular band");
  Domain d;
  d.kind_ = DomainKind::sector;
  d.n_ = n;
  d.center_ = std::move(center);
  d.r_lo_ = r_lo;
  d.r_hi_ = r_hi;
  d.ang_lo_ = ang_lo;
  d.ang_hi_ = std::min(ang_hi, n == 3 ? kPi : ang_hi);
  return d;
}

Domain Domain::difference(const Domain& a, const Domain& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::InvalidGeometry, "difference: dimensions differ");
  Domain d;
  d.kind_ = DomainKind::difference;
  d.n_ = a.dim();
  d.center_ = a.center_;
  d.a_ = std::make_shared<const Domain>(a);
  d.b_ = std::make_shared<const Domain>(b);
  return d;
}

bool Domain::is_radial() const {
  return kind_ == DomainKind::ball || kind_ == DomainKind::annulus || kind_ == DomainKind::sector;
}

namespace {

double polar_angle_in_band(double theta, double lo) {
  double t = std::fmod(theta - lo, kTwoPi);
  if (t < 0) t += kTwoPi;
  return t;
}

}  // namespace

bool Domain::contains(const Point& x) const {
  if (x.size() != n_) return false;
  switch (kind_) {
    case DomainKind::ball:
      return (x - center_).norm() <= r_hi_;
    case DomainKind::cube:
      return (x - center_).cwiseAbs().maxCoeff() <= r_hi_;
    case DomainKind::annulus: {
      const double r = (x - center_).norm();
      return r >= r_lo_ && r <= r_hi_;
    }
    case DomainKind::sector: {
      const Point y = x - center_;
      const double r = y.norm();
      if (r < r_lo_ || r > r_hi_) return false;
      if (n_ == 2) return polar_angle_in_band(std::atan2(y(1), y(0)), ang_lo_) <= ang_hi_ - ang_lo_;
      const double phi = r > 0 ? std::acos(std::clamp(y(2) / r, -1.0, 1.0)) : 0.0;
      return phi >= ang_lo_ && phi <= ang_hi_;
    }
    case DomainKind::cone: {
      const Point local = cone_.frame.transpose() * (x - cone_.center);
      const double t = local(cone_.cross_dim);
      if (std::abs(t) > cone_.half_length) return false;
      const double rho = local.head(cone_.cross_dim).norm();
      const double prof = cone_.epsilon * (cone_.half_length - std::abs(t));
      return rho >= cone_.s_lo * prof && rho <= cone_.s_hi * prof;
    }
    case DomainKind::difference:
      return a_->contains(x) && !b_->contains(x);
  }
  return false;
}

double Domain::volume() const {
  switch (kind_) {
    case DomainKind::ball:
      return unit_ball_volume(n_) * std::pow(r_hi_, n_);
    case DomainKind::cube:
      return std::pow(2.0 * r_hi_, n_);
    case DomainKind::annulus:
      return unit_ball_volume(n_) * (std::pow(r_hi_, n_) - std::pow(r_lo_, n_));
    case DomainKind::sector:
      if (n_ == 2) return 0.5 * (ang_hi_ - ang_lo_) * (r_hi_ * r_hi_ - r_lo_ * r_lo_);
      return kTwoPi * (std::cos(ang_lo_) - std::cos(ang_hi_)) * (std::pow(r_hi_, 3) - std::pow(r_lo_, 3)) / 3.0;
    case DomainKind::cone: {
      const int c = cone_.cross_dim;
      const double L = cone_.half_length;
      return unit_ball_volume(c) * std::pow(cone_.epsilon, c) * (std::pow(cone_.s_hi, c) - std::pow(cone_.s_lo, c)) *
             2.0 * std::pow(L, c + 1) / (c + 1);
    }
    case DomainKind::difference: {
      const Parametrization p = parametrize();
      if (!p.excluded) {
        double v = 0.0;
        for (const auto& ch : p.charts) {
          // Radial bands only: integrate the closed-form measure of each chart.
          if (ch.kind == Chart::Kind::polar) {
            v += 0.5 * (ch.hi[1] - ch.lo[1]) * (ch.hi[0] * ch.hi[0] - ch.lo[0] * ch.lo[0]);
          } else if (ch.kind == Chart::Kind::spherical) {
            v += (ch.hi[2] - ch.lo[2]) * (std::cos(ch.lo[1]) - std::cos(ch.hi[1])) *
                 (std::pow(ch.hi[0], 3) - std::pow(ch.lo[0], 3)) / 3.0;
          } else {
            v += unit_ball_volume(4) * (std::pow(ch.hi[0], 4) - std::pow(ch.lo[0], 4));
          }
        }
        return v;
      }
      QuadratureOptions opts;
      opts.tol = 1e-8;
      opts.throw_on_failure = false;
      return integrate_components([](const Point&) { return Components::Ones(1); }, 1, *this, opts)[0].value;
    }
  }
  return 0.0;
}

std::pair<Point, Point> Domain::bounding_box() const {
  switch (kind_) {
    case DomainKind::cube:
    case DomainKind::ball:
    case DomainKind::annulus:
    case DomainKind::sector:
      return {center_.array() - r_hi_, center_.array() + r_hi_};
    case DomainKind::cone: {
      const double reach = cone_.half_length * (1.0 + cone_.epsilon);
      return {center_.array() - reach, center_.array() + reach};
    }
    case DomainKind::difference:
      return a_->bounding_box();
  }
  return {center_, center_};
}

Domain::Parametrization Domain::parametrize() const {
  Parametrization out;
  auto radial_chart = [&](double r0, double r1, double a0, double a1) {
    Chart c;
    c.n = n_;
    c.center = center_;
    c.lo[0] = r0;
    c.hi[0] = r1;
    if (n_ == 2) {
      c.kind = Chart::Kind::polar;
      c.lo[1] = a0;
      c.hi[1] = a1;
    } else if (n_ == 3) {
      c.kind = Chart::Kind::spherical;
      c.lo[1] = a0;
      c.hi[1] = a1;
      c.lo[2] = 0.0;
      c.hi[2] = kTwoPi;
    } else {
      c.kind = Chart::Kind::hyperspherical;
      c.lo[1] = 0.0;
      c.hi[1] = kPi;
      c.lo[2] = 0.0;
      c.hi[2] = kPi;
      c.lo[3] = 0.0;
      c.hi[3] = kTwoPi;
    }
    return c;
  };
  const double full = n_ == 2 ? kTwoPi : kPi;
  switch (kind_) {
    case DomainKind::ball:
      out.charts.push_back(radial_chart(0.0, r_hi_, 0.0, full));
      break;
    case DomainKind::annulus:
      out.charts.push_back(radial_chart(r_lo_, r_hi_, 0.0, full));
      break;
    case DomainKind::sector:
      out.charts.push_back(radial_chart(r_lo_, r_hi_, ang_lo_, ang_hi_));
      break;
    case DomainKind::cube: {
      Chart c;
      c.kind = Chart::Kind::cartesian;
      c.n = n_;
      for (int i = 0; i < n_; ++i) {
        c.lo[i] = center_(i) - r_hi_;
        c.hi[i] = center_(i) + r_hi_;
      }
      out.charts.push_back(c);
      break;
    }
    case DomainKind::cone: {
      for (int side = 0; side < 2; ++side) {
        Chart c;
        c.kind = Chart::Kind::cone;
        c.n = n_;
        c.center = cone_.center;
        c.frame = cone_.frame;
        c.cross_dim = cone_.cross_dim;
        c.epsilon = cone_.epsilon;
        c.half_length = cone_.half_length;
        c.lo[0] = cone_.s_lo;
        c.hi[0] = cone_.s_hi;
        if (cone_.cross_dim == 2) {
          c.lo[1] = 0.0;
          c.hi[1] = kTwoPi;
        } else {
          c.lo[1] = 0.0;
          c.hi[1] = kPi;
          c.lo[2] = 0.0;
          c.hi[2] = kTwoPi;
        }
        // Split at t = 0, where the profile has its kink.
        c.lo[cone_.cross_dim] = side == 0 ? -cone_.half_length : 0.0;
        c.hi[cone_.cross_dim] = side == 0 ? 0.0 : cone_.half_length;
        out.charts.push_back(c);
      }
      break;
    }
    case DomainKind::difference: {
      const Domain& a = *a_;
      const Domain& b = *b_;
      const bool concentric = a.is_radial() && b.kind_ == DomainKind::ball && (a.center_ - b.center_).norm() < 1e-14;
      if (concentric) {
        const double r0 = std::max(a.r_lo_, b.r_hi_);
        if (r0 < a.r_hi_) {
          const double a0 = a.kind_ == DomainKind::sector ? a.ang_lo_ : 0.0;
          const double a1 = a.kind_ == DomainKind::sector ? a.ang_hi_ : full;
          Chart c = a.parametrize().charts.front();
          c.lo[0] = r0;
          if (n_ <= 3) {
            c.lo[1] = a0;
            c.hi[1] = a1;
          }
          out.charts.push_back(c);
        }
        break;
      }
      Parametrization pa = a.parametrize();
      out.charts = std::move(pa.charts);
      auto b_ptr = b_;
      auto prev = pa.excluded;
      out.excluded = [b_ptr, prev](const Point& x) { return b_ptr->contains(x) || (prev && prev(x)); };
      break;
    }
  }
  return out;
}

}  // namespace relaxarea
