#include <cmath>
#include <vector>

#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"
#include "properties.hpp"
#include "relaxarea/quadrature.hpp"

using namespace relaxarea;

TEST_CASE("domain volumes and membership") {
  CHECK(Domain::ball(2, 1.0, Point::Zero(2)).volume() == doctest::Approx(oracle::pi).epsilon(1e-10));
  const Domain cone = Domain::cone_over_segment(make_point({0, 0, -1}), make_point({0, 0, 1}), 0.3);
  CHECK(cone.volume() == doctest::Approx(oracle::cone_volume(0.3)).epsilon(1e-10));
  CHECK(cone.contains(make_point({0.1, 0.0, 0.5})));
  CHECK_FALSE(cone.contains(make_point({0.2, 0.0, 0.5})));
  const Domain shell = Domain::difference(Domain::ball(3, 1.0, Point::Zero(3)), Domain::ball(3, 0.5, Point::Zero(3)));
  CHECK(shell.contains(make_point({0.7, 0.0, 0.0})));
  CHECK_FALSE(shell.contains(make_point({0.2, 0.0, 0.0})));
  CHECK_THROWS_AS(Domain::annulus(2, 0.5, 0.4, Point::Zero(2)), Error);
  CHECK_THROWS_AS(Domain::cone_over_segment(make_point({0, 0, 0}), make_point({0, 0, 0}), 0.1), Error);
}

TEST_CASE("integrate examples") {
  const auto one = [](const Point&) { return 1.0; };
  const QuadratureResult disk = integrate(one, Domain::ball(2, 1.0, Point::Zero(2)), 1e-10);
  CHECK(disk.converged);
  CHECK(std::abs(disk.value - oracle::pi) <= 1e-8 * oracle::pi);

  FieldParams p;
  const VectorField vortex = make_example_field(FieldKind::vortex, p);
  const auto grad = [&](const Point& x) { return vortex.jacobian_at(x).norm(); };
  const QuadratureResult tv = integrate(grad, Domain::ball(2, 1.0, Point::Zero(2)), 1e-8, vortex.singular_set());
  CHECK(tv.value == doctest::Approx(2.0 * oracle::pi).epsilon(1e-7));

  p.n = 3;
  const VectorField pv = make_example_field(FieldKind::planar_vortex, p);
  const SobolevEnergy e = sobolev_energy(pv, Domain::ball(3, 1.0, Point::Zero(3)), 1e-8);
  CHECK(e.tv.value == doctest::Approx(oracle::planar_vortex_tv_b3()).epsilon(1e-6));
}

TEST_CASE("area functional matches one-dimensional oracles") {
  for (int d : {1, -2, 3}) {
    FieldParams p;
    p.degree = d;
    const VectorField u = make_example_field(FieldKind::vortex, p);
    CHECK(area_functional(u, Domain::ball(2, 1.0, Point::Zero(2)), 1e-8).value ==
          doctest::Approx(oracle::vortex_area(d)).epsilon(1e-7));
  }
  CHECK(oracle::vortex_area(1) == doctest::Approx(oracle::vortex_area_closed()).epsilon(1e-10));

  FieldParams p3;
  p3.n = 3;
  const VectorField pv = make_example_field(FieldKind::planar_vortex, p3);
  CHECK(area_functional(pv, Domain::ball(3, 1.0, Point::Zero(3)), 1e-8).value ==
        doctest::Approx(oracle::planar_vortex_area_b3()).epsilon(1e-6));

  const VectorField sv = make_example_field(FieldKind::sphere_vortex, p3);
  for (double r : {0.3, 1.0})
    CHECK(area_functional(sv, Domain::ball(3, r, Point::Zero(3)), 1e-8).value ==
          doctest::Approx(oracle::sphere_vortex_area(r)).epsilon(1e-7));
}

TEST_CASE("property: polynomial exactness on cubes") {
  const prop::Outcome o = prop::polynomial_exactness(40, 0x9011);
  INFO(o.first_failure);
  CHECK(o.cases == 40);
  CHECK(o.failures == 0);
}

TEST_CASE("property: monotone under nested domains") {
  gen::Rng rng(21);
  FieldParams p;
  p.n = 3;
  p.lift_amplitude = 1.7;
  const VectorField u = make_example_field(FieldKind::smooth_lift, p);
  const auto f = [&](const Point& x) { return area_integrand(u.jacobian_at(x)); };
  for (int t = 0; t < 10; ++t) {
    const double r1 = rng.uniform(0.1, 0.9), r2 = rng.uniform(r1, 1.0);
    const QuadratureResult a = integrate(f, Domain::ball(3, r1, Point::Zero(3)), 1e-6);
    const QuadratureResult b = integrate(f, Domain::ball(3, r2, Point::Zero(3)), 1e-6);
    REQUIRE(a.value <= b.value + 1e-6 * b.value);
  }
}

TEST_CASE("property: additivity over differences") {
  gen::Rng rng(22);
  FieldParams p;
  p.n = 2;
  const VectorField u = make_example_field(FieldKind::smooth_lift, p);
  const auto f = [&](const Point& x) { return area_integrand(u.jacobian_at(x)); };
  for (int t = 0; t < 6; ++t) {
    const Domain big = Domain::ball(2, 1.0, Point::Zero(2));
    // Off-centre holes exercise the masked path, centred ones the shell chart.
    const Point c = t % 2 ? make_point({rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3)}) : Point(Point::Zero(2));
    const Domain hole = Domain::ball(2, rng.uniform(0.1, 0.5), c);
    const QuadratureResult whole = integrate(f, big, 1e-7);
    const QuadratureResult part = integrate(f, hole, 1e-7);
    QuadratureOptions o;
    o.throw_on_failure = false;
    const QuadratureResult rest = integrate(f, Domain::difference(big, hole), 1e-5, {}, o);
    const double tol = whole.error_estimate + part.error_estimate + rest.error_estimate + 1e-6 * whole.value;
    REQUIRE(std::abs(rest.value + part.value - whole.value) <= tol);
  }
}

TEST_CASE("property: area dominates graph BV which dominates volume") {
  gen::Rng rng(23);
  const FieldKind kinds[] = {FieldKind::smooth_lift, FieldKind::vortex, FieldKind::hedgehog_projection};
  for (FieldKind k : kinds) {
    FieldParams p;
    p.n = k == FieldKind::hedgehog_projection ? 3 : 2;
    const VectorField u = make_example_field(k, p);
    const Domain dom = Domain::ball(p.n, rng.uniform(0.4, 1.0), Point::Zero(p.n));
    const EnergyMetrics e = energy_metrics(u, dom);
    const double slack = e.area.error_estimate + e.graph_bv.error_estimate;
    REQUIRE(e.area.value + slack >= e.graph_bv.value);
    REQUIRE(e.graph_bv.value + e.graph_bv.error_estimate >= dom.volume() * (1.0 - 1e-12));
  }
}

TEST_CASE("converged results honour their tolerance") {
  FieldParams p;
  const VectorField u = make_example_field(FieldKind::vortex, p);
  const QuadratureResult r = area_functional(u, Domain::cube(2, 1.0, Point::Zero(2)), 1e-6);
  CHECK(r.converged);
  CHECK(r.error_estimate <= std::max(1e-6 * std::abs(r.value), 1e-10));
}

TEST_CASE("serial and parallel paths agree bitwise") {
  FieldParams p;
  p.n = 3;
  const VectorField u = make_example_field(FieldKind::planar_vortex, p);
  const Domain dom = Domain::cube(3, 1.0, Point::Zero(3));
  QuadratureOptions s, q;
  s.execution = Execution::serial;
  q.execution = Execution::parallel;
  const EnergyMetrics a = energy_metrics(u, dom, s), b = energy_metrics(u, dom, q);
  CHECK(a.area.value == b.area.value);
  CHECK(a.tv.value == b.tv.value);
  CHECK(a.area.nodes_used == b.area.nodes_used);
}

TEST_CASE("Monte Carlo fallback is seeded and reports its error") {
  const auto one = [](const Point&) { Components c(1); c(0) = 1.0; return c; };
  const Domain d = Domain::difference(Domain::ball(2, 1.0, Point::Zero(2)), Domain::ball(2, 0.3, make_point({0.5, 0.0})));
  const auto a = integrate_monte_carlo(one, 1, d, 4096, Execution::serial);
  const auto b = integrate_monte_carlo(one, 1, d, 4096, Execution::parallel);
  CHECK(a[0].value == b[0].value);
  CHECK(a[0].monte_carlo);
  const double exact = oracle::pi * (1.0 - 0.09);
  CHECK(std::abs(a[0].value - exact) <= 3.0 * a[0].error_estimate + 1e-3);
}

TEST_CASE("non-finite integrands are reported") {
  const auto bad = [](const Point&) { return std::nan(""); };
  try {
    integrate(bad, Domain::ball(2, 1.0, Point::Zero(2)));
    FAIL("expected NonFinite");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonFinite);
  }
}

TEST_CASE("depth cap without convergence throws NoConvergence") {
  // Discontinuous integrand on a masked difference with MC disabled.
  const auto step = [](const Point& x) { return x(0) > 0.123456 ? 1.0 : 0.0; };
  QuadratureOptions o;
  o.max_depth = 2;
  o.allow_monte_carlo = false;
  try {
    integrate(step, Domain::cube(2, 1.0, Point::Zero(2)), 1e-10, {}, o);
    FAIL("expected NoConvergence");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoConvergence);
  }
}

TEST_CASE("gauss rules integrate constants") {
  for (int order : {2, 3, 5, 8, 10, 20}) {
    std::vector<double> x, w;
    gauss_rule(order, x, w);
    REQUIRE(static_cast<int>(x.size()) == order);
    double s = 0.0;
    for (double v : w) s += v;
    CHECK(s == doctest::Approx(2.0).epsilon(1e-14));
  }
  std::vector<double> x, w;
  CHECK_THROWS_AS(gauss_rule(13, x, w), Error);
}
