#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"
#include "properties.hpp"
#include "relaxarea/topology.hpp"

using namespace relaxarea;

namespace {

using prop::line_field;
using prop::Vortex;
using prop::vortex_product;

VectorField conjugate(const VectorField& u) {
  auto value = [u](const Point& x) {
    Value v = u.evaluate(x);
    v(1) = -v(1);
    return v;
  };
  return VectorField(u.source_dim(), 2, value, {}, u.singular_set(), true, "conjugate");
}

VectorField field(FieldKind k, int n = 2, int d = 1) {
  FieldParams p;
  p.n = n;
  p.degree = d;
  return make_example_field(k, p);
}

}  // namespace

TEST_CASE("winding number examples") {
  CHECK(winding_number(field(FieldKind::vortex), Loop::circle(Point::Zero(2), 0.5), 64) == 1);
  CHECK(winding_number(field(FieldKind::vortex, 2, -3), Loop::circle(Point::Zero(2), 0.5), 64) == -3);
  const VectorField lift = field(FieldKind::smooth_lift);
  CHECK(winding_number(lift, Loop::circle(make_point({0.1, -0.2}), 0.6)) == 0);
  try {
    winding_number(field(FieldKind::vortex), Loop::circle(make_point({0.5, 0.0}), 0.5));
    FAIL("expected SingularOnLoop");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularOnLoop);
  }
}

TEST_CASE("property: winding is additive under concatenation and odd under conjugation") {
  gen::Rng rng(31);
  for (int t = 0; t < 50; ++t) {
    std::vector<Vortex> vs;
    const int count = rng.integer(1, 3);
    for (int i = 0; i < count; ++i)
      vs.push_back({make_point({rng.uniform(-0.7, 0.7), rng.uniform(-0.7, 0.7)}), rng.integer(-3, 3)});
    const VectorField u = vortex_product(vs);
    // Two rectangles sharing the base point b, traversed one after the other.
    const double bx = rng.uniform(-0.1, 0.1), by = rng.uniform(-0.1, 0.1);
    const double w1 = rng.uniform(0.3, 0.95), w2 = rng.uniform(0.3, 0.95);
    const std::vector<Point> A{make_point({bx, by}), make_point({bx, by + w1}), make_point({bx - w1, by + w1}),
                               make_point({bx - w1, by})};
    const std::vector<Point> B{make_point({bx, by}), make_point({bx + w2, by}), make_point({bx + w2, by - w2}),
                               make_point({bx, by - w2})};
    std::vector<Point> AB = A;
    AB.insert(AB.end(), B.begin(), B.end());
    bool clear = true;
    for (const auto& v : vs) {
      for (const auto* poly : {&A, &B})
        for (std::size_t i = 0; i < poly->size(); ++i) {
          const Point& a = (*poly)[i];
          const Point& b = (*poly)[(i + 1) % poly->size()];
          const double s = std::clamp((v.c - a).dot(b - a) / (b - a).squaredNorm(), 0.0, 1.0);
          if ((a + s * (b - a) - v.c).norm() < 0.05) clear = false;
        }
    }
    if (!clear) continue;
    const int wa = winding_number(u, Loop::polyline(A), 256);
    const int wb = winding_number(u, Loop::polyline(B), 256);
    REQUIRE(winding_number(u, Loop::polyline(AB), 512) == wa + wb);
    REQUIRE(winding_number(conjugate(u), Loop::polyline(A), 256) == -wa);
  }
}

TEST_CASE("extract_vortices_2d examples") {
  const GridSpec g = GridSpec::cube(2, 1.0, 64);
  const SingularChain one = extract_vortices_2d(field(FieldKind::vortex), g);
  REQUIRE(one.cells.size() == 1);
  CHECK(one.cells[0].multiplicity == 1);
  CHECK(one.cells[0].a.norm() <= g.spacing(0) * std::sqrt(2.0));
  CHECK(extract_vortices_2d(field(FieldKind::smooth_lift), g).empty());

  FieldParams p;
  p.chain_length = 3;
  const SingularChain chain = extract_vortices_2d(make_example_field(FieldKind::vortex_chain, p), g);
  REQUIRE(chain.cells.size() == 3);
  // Cells come in lexicographic order, which is the order of the disks along x.
  CHECK(chain.cells[0].multiplicity == 1);
  CHECK(chain.cells[1].multiplicity == -1);
  CHECK(chain.cells[2].multiplicity == 1);
}

TEST_CASE("property: discrete Stokes identity on random vortex configurations") {
  const prop::Outcome o = prop::discrete_stokes(100, 0x570C);
  INFO(o.first_failure);
  CHECK(o.cases == 100);
  CHECK(o.failures == 0);
}

TEST_CASE("ambiguous plaquettes are reported with their index") {
  auto value = [](const Point& x) {
    Value v(2);
    const double a = x(0) > 0.1 ? 3.0 : 0.0;
    v << std::cos(a), std::sin(a);
    return v;
  };
  // A jump no resampling can resolve.
  const VectorField jump(2, 2, value, {}, {}, true, "jump");
  try {
    extract_vortices_2d(jump, GridSpec::cube(2, 1.0, 8));
    FAIL("expected AmbiguousWinding");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AmbiguousWinding);
    CHECK(e.index().has_value());
  }
}

TEST_CASE("planar vortex lines in 3D") {
  const VectorField u = field(FieldKind::planar_vortex, 3);
  const GridSpec g64 = GridSpec::cube(3, 1.0, 64);
  const SingularChain c64 = extract_lines_3d(u, g64);
  CHECK(interior_boundary(c64, g64).empty());
  const double m64 = chain_mass(c64);
  CHECK(m64 >= 1.9);
  CHECK(m64 <= 2.1);
  const int sign = c64.cells.front().multiplicity;
  for (const auto& c : c64.cells) {
    CHECK(std::abs(c.multiplicity) == 1);
    CHECK(c.multiplicity == sign);
    CHECK(std::hypot(c.a(0), c.a(1)) <= g64.spacing(0));
  }
  CHECK(chain_mass(restrict_chain(c64, Domain::ball(3, 1.0, Point::Zero(3)))) == doctest::Approx(2.0).epsilon(0.02));
  CHECK(extract_lines_3d(field(FieldKind::smooth_lift, 3), GridSpec::cube(3, 1.0, 16)).empty());
}

TEST_CASE("fast but continuous fields are resolved by resampling") {
  auto value = [](const Point& x) {
    Value v(2);
    v << std::cos(100.0 * x(0)), std::sin(100.0 * x(0));
    return v;
  };
  const VectorField fast(2, 2, value, {}, {}, true, "fast");
  CHECK(extract_vortices_2d(fast, GridSpec::cube(2, 1.0, 8)).empty());
}

TEST_CASE("serial and parallel extraction agree") {
  const VectorField u = field(FieldKind::planar_vortex, 3);
  const GridSpec g = GridSpec::cube(3, 1.0, 24);
  const SingularChain a = extract_lines_3d(u, g, Execution::serial), b = extract_lines_3d(u, g, Execution::parallel);
  REQUIRE(a.cells.size() == b.cells.size());
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    CHECK(a.cells[i].a == b.cells[i].a);
    CHECK(a.cells[i].multiplicity == b.cells[i].multiplicity);
  }
}

TEST_CASE("tilted line: staircase mass within the l1 bound inside the ball") {
  const double t = oracle::pi / 6.0;
  const Eigen::Vector3d axis(0.0, -std::sin(t), std::cos(t));
  const VectorField u = line_field(Eigen::Vector3d::Zero(), axis, 1, 0.0);
  const GridSpec g = GridSpec::cube(3, 1.0, 64);
  const SingularChain c = extract_lines_3d(u, g);
  CHECK(interior_boundary(c, g).empty());
  const double m = chain_mass(restrict_chain(c, Domain::ball(3, 1.0, Point::Zero(3))));
  CHECK(m >= 2.0 - 0.05);
  CHECK(m <= 2.0 * std::sqrt(2.0));
}

TEST_CASE("property: extracted chains have no interior boundary") {
  const prop::Outcome o = prop::boundary_of_extraction(20, 0xB0D);
  INFO(o.first_failure);
  CHECK(o.cases == 20);
  CHECK(o.failures == 0);
}

TEST_CASE("chain operators") {
  SingularChain seg;
  seg.n = 3;
  seg.k = 1;
  seg.cells.push_back({make_point({0, 0, 0}), make_point({0, 0, 2}), 3});
  CHECK(chain_mass(seg) == doctest::Approx(6.0));
  const SingularChain b = chain_boundary(seg);
  REQUIRE(b.cells.size() == 2);
  CHECK(b.cells[0].multiplicity + b.cells[1].multiplicity == 0);
  CHECK(std::abs(b.cells[0].multiplicity) == 3);

  SingularChain empty;
  empty.n = 3;
  empty.k = 1;
  CHECK(chain_boundary(empty).empty());

  SingularChain pts;
  pts.n = 2;
  pts.k = 0;
  pts.cells.push_back({make_point({0, 0}), make_point({0, 0}), -2});
  pts.cells.push_back({make_point({0.5, 0}), make_point({0.5, 0}), 1});
  CHECK(chain_mass(pts) == 3.0);

  const SingularChain ac = analytic_chain(field(FieldKind::planar_vortex, 3));
  CHECK(ac.k == 1);
  CHECK(chain_mass(ac) == doctest::Approx(2.0));
}

TEST_CASE("relaxed area right-hand side for the vortex") {
  const VectorField u = field(FieldKind::vortex);
  const Domain b2 = Domain::ball(2, 1.0, Point::Zero(2));
  const RelaxedRhs r = relaxed_area_rhs(u, b2, analytic_chain(u));
  CHECK(r.mass == 1.0);
  CHECK(r.value == doctest::Approx(oracle::vortex_relaxed_rhs()).epsilon(1e-6));
}
