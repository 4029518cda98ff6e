#include <cmath>

#include "relaxarea/topology.hpp"

namespace relaxarea {

Loop Loop::circle(Point center, double radius) {
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidGeometry, "loop radius must be positive");
  Loop l;
  l.kind = Kind::circle;
  l.center = std::move(center);
  l.radius = radius;
  return l;
}

Loop Loop::polyline(std::vector<Point> vertices) {
  if (vertices.size() < 3) throw Error(ErrorCode::InvalidGeometry, "a closed polyline needs at least 3 vertices");
  Loop l;
  l.kind = Kind::polyline;
  l.vertices = std::move(vertices);
  return l;
}

namespace {

std::vector<Point> sample_loop(const Loop& loop, int samples) {
  std::vector<Point> pts;
  if (loop.kind == Loop::Kind::circle) {
    pts.reserve(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) {
      const double t = kTwoPi * i / samples;
      Point p = loop.center;
      p(0) += loop.radius * std::cos(t);
      p(1) += loop.radius * std::sin(t);
      pts.push_back(p);
    }
    return pts;
  }
  const auto& v = loop.vertices;
  double perimeter = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) perimeter += (v[(i + 1) % v.size()] - v[i]).norm();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point& a = v[i];
    const Point& b = v[(i + 1) % v.size()];
    const int parts = std::max(1, static_cast<int>(std::ceil(samples * (b - a).norm() / perimeter)));
    for (int j = 0; j < parts; ++j) pts.push_back(a + (b - a) * (static_cast<double>(j) / parts));
  }
  return pts;
}

double angle_of(const VectorField& field, const Point& x) {
  Value u;
  try {
    u = field.evaluate(x);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SingularPoint) throw Error(ErrorCode::SingularOnLoop, "loop meets the singular set");
    throw;
  }
  if (std::hypot(u(0), u(1)) < 1e-12) throw Error(ErrorCode::SingularOnLoop, "field vanishes on the loop");
  return std::atan2(u(1), u(0));
}

}  // namespace

int winding_number(const VectorField& field, const Loop& loop, int samples) {
  if (field.target_dim() != 2) throw Error(ErrorCode::InvalidParams, "winding_number needs a planar target");
  if (samples < 3) throw Error(ErrorCode::InvalidParams, "winding_number needs at least 3 samples");
  int count = samples;
  for (int attempt = 0; attempt <= 4; ++attempt, count *= 2) {
    const std::vector<Point> pts = sample_loop(loop, count);
    std::vector<double> ang(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) ang[i] = angle_of(field, pts[i]);
    double total = 0.0;
    bool ok = true;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double d = std::remainder(ang[(i + 1) % pts.size()] - ang[i], kTwoPi);
      if (std::abs(d) >= 0.5 * kPi) {
        ok = false;
        break;
      }
      total += d;
    }
    if (ok) return static_cast<int>(std::lround(total / kTwoPi));
  }
  throw Error(ErrorCode::AmbiguousWinding, "angle increment >= pi/2 after 4 resamplings");
}

}  // namespace relaxarea
