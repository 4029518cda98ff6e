#include <cmath>
#include <vector>

#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"
#include "relaxarea/recovery.hpp"
#include "relaxarea/topology.hpp"

using namespace relaxarea;

namespace {

VectorField field(FieldKind k, int n = 2, int d = 1) {
  FieldParams p;
  p.n = n;
  p.degree = d;
  return make_example_field(k, p);
}

QuadratureOptions opts(double tol = 1e-6) {
  QuadratureOptions o;
  o.tol = tol;
  return o;
}

// Checks v == u at `count` random points of the unit ball outside the modified region.
void check_agreement(const Recovered& rec, int count, std::uint64_t seed) {
  gen::Rng rng(seed);
  const int n = rec.input.source_dim();
  int done = 0;
  while (done < count) {
    const Point x = rng.in_ball(n, 1.0);
    if (rec.modified(x)) continue;
    if (distance_to(rec.input.singular_set(), x) < 1e-3) continue;
    REQUIRE((rec.field.evaluate(x) - rec.input.evaluate(x)).cwiseAbs().maxCoeff() <= 1e-12);
    ++done;
  }
}

void check_norm(const Recovered& rec, int count, std::uint64_t seed) {
  gen::Rng rng(seed);
  const int n = rec.field.source_dim();
  for (int i = 0; i < count; ++i) {
    const Point x = rng.in_ball(n, 1.0);
    if (distance_to(rec.field.singular_set(), x) < 1e-6) continue;
    REQUIRE(rec.field.evaluate(x).norm() <= 1.0 + 1e-12);
  }
}

// E(v, whole) from E(u, whole) and the piece energies.
EnergyMetrics assembled(const Recovered& rec, const Domain& whole, const QuadratureOptions& o) {
  const EnergyMetrics base = energy_metrics(rec.input, whole, o);
  const EnergyMetrics in = piece_energies(rec, o, true), out = piece_energies(rec, o, false);
  EnergyMetrics e = base;
  e.area.value += out.area.value - in.area.value;
  e.tv.value += out.tv.value - in.tv.value;
  e.minors.value += out.minors.value - in.minors.value;
  return e;
}

}  // namespace

TEST_CASE("vortex smoothing agrees outside the core and is bounded by 1") {
  const VectorField u = field(FieldKind::vortex);
  for (double eps : {0.2, 0.05}) {
    const Recovered rec = vortex_smoothing_2d(u, Point::Zero(2), 1, eps);
    check_agreement(rec, 100, 101);
    check_norm(rec, 2000, 102);
    CHECK(rec.field.singular_set().empty());
    // Linear core: |v| = 2 rho / eps.
    const Point x = make_point({0.3 * eps, 0.1 * eps});
    CHECK(rec.field.evaluate(x).norm() == doctest::Approx(2.0 * x.norm() / eps).epsilon(1e-12));
  }
}

TEST_CASE("vortex smoothing of a non-radial field keeps its degree") {
  auto value = [](const Point& x) {
    const double a = -2.0 * std::atan2(x(1), x(0)) + 0.3 * x(0) + 0.2 * x(1) * x(1);
    Value v(2);
    v << std::cos(a), std::sin(a);
    return v;
  };
  const VectorField u(2, 2, value, {}, {SingularPiece::point(Point::Zero(2), -2)}, true, "bent_vortex");
  const Recovered rec = vortex_smoothing_2d(u, Point::Zero(2), -2, 0.1);
  check_agreement(rec, 100, 103);
  CHECK(winding_number(rec.field, Loop::circle(Point::Zero(2), 0.075)) == -2);
}

TEST_CASE("vortex smoothing total variation matches the closed form") {
  const VectorField u = field(FieldKind::vortex);
  for (double eps : {0.2, 0.1}) {
    const Recovered rec = vortex_smoothing_2d(u, Point::Zero(2), 1, eps);
    const EnergyMetrics e = assembled(rec, Domain::ball(2, 1.0, Point::Zero(2)), opts(1e-8));
    CHECK(e.tv.value == doctest::Approx(oracle::smoothing_tv(eps)).epsilon(1e-6));
  }
}

TEST_CASE("smoothing rejects a wrong degree") {
  try {
    vortex_smoothing_2d(field(FieldKind::vortex), Point::Zero(2), 2, 0.1);
    FAIL("expected DegreeMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegreeMismatch);
  }
  CHECK_THROWS_AS(vortex_smoothing_2d(field(FieldKind::vortex), Point::Zero(2), 1, -0.1), Error);
}

TEST_CASE("cone dipole: agreement, bound and trace") {
  const VectorField u = field(FieldKind::planar_vortex, 3);
  const Point a = make_point({0, 0, -1}), b = make_point({0, 0, 1});
  for (DipoleProfile prof : {DipoleProfile::shell_core, DipoleProfile::model}) {
    const Recovered rec = cone_dipole(u, a, b, 1, 0.1, prof);
    check_agreement(rec, 100, 201);
    check_norm(rec, 2000, 202);
    gen::Rng rng(203);
    for (int i = 0; i < 100; ++i) {
      const double t = rng.uniform(-0.95, 0.95), phi = rng.uniform(0.0, 2.0 * oracle::pi);
      const double rho = 0.1 * (1.0 - std::abs(t));
      const Point x = make_point({rho * std::cos(phi), rho * std::sin(phi), t});
      REQUIRE((rec.field.evaluate(x) - u.evaluate(x)).norm() <= 1e-9);
    }
  }
}

TEST_CASE("cone dipole model minors match the closed form") {
  const VectorField u = field(FieldKind::planar_vortex, 3);
  for (double eps : {0.2, 0.05}) {
    const Recovered rec = cone_dipole(u, make_point({0, 0, -1}), make_point({0, 0, 1}), 1, eps, DipoleProfile::model);
    const EnergyMetrics e = piece_energies(rec, opts(1e-8));
    CHECK(e.minors.value == doctest::Approx(oracle::dipole_model_minors(eps)).epsilon(1e-5));
  }
}

TEST_CASE("cone dipole errors") {
  const VectorField u = field(FieldKind::planar_vortex, 3);
  try {
    cone_dipole(u, make_point({0, 0, -1}), make_point({0, 0, 1}), -1, 0.1);
    FAIL("expected DegreeMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegreeMismatch);
  }
  try {
    cone_dipole(u, make_point({0, 0, 0.5}), make_point({0, 0, 0.5}), 1, 0.1);
    FAIL("expected InvalidGeometry");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidGeometry);
  }
}

TEST_CASE("point removal: agreement and geometry errors") {
  const VectorField u = field(FieldKind::hedgehog_projection, 3);
  const Recovered rec = remove_point_singularity(u, Point::Zero(3), 0.4, 0.16);
  check_agreement(rec, 100, 301);
  REQUIRE(rec.pieces.size() == 2);
  try {
    remove_point_singularity(u, Point::Zero(3), 0.2, 0.3);
    FAIL("expected InvalidGeometry");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidGeometry);
  }
}

TEST_CASE("point removal: core energies scale with delta") {
  // Halving delta halves the minor mass of the core (n - 2 = 1) and quarters its gradient integral.
  const VectorField u = field(FieldKind::hedgehog_projection, 3);
  const double r = 0.5;
  EnergyMetrics core[2];
  for (int i = 0; i < 2; ++i) {
    Recovered rec = remove_point_singularity(u, Point::Zero(3), r, i ? 0.05 : 0.1);
    rec.pieces.erase(rec.pieces.begin());
    core[i] = piece_energies(rec, opts(1e-8));
  }
  CHECK(core[0].minors.value / core[1].minors.value == doctest::Approx(2.0).epsilon(1e-4));
  CHECK(core[0].tv.value / core[1].tv.value == doctest::Approx(4.0).epsilon(1e-4));
}

TEST_CASE("homogeneous cone extension agrees outside the cone") {
  const VectorField u = field(FieldKind::hedgehog_projection, 4);
  const Recovered rec =
      homogeneous_cone_extension(u, make_point({0, 0, 0, -1}), make_point({0, 0, 0, 1}), 0.2, 0.04);
  check_agreement(rec, 100, 401);
  REQUIRE(rec.pieces.size() == 2);
  CHECK_THROWS_AS(homogeneous_cone_extension(u, make_point({0, 0, 0, -1}), make_point({0, 0, 0, 1}), 0.2, 0.3),
                  Error);
}

TEST_CASE("ball counterexample: Jacobian determinant integrates to the ball volume") {
  for (int k : {2, 4, 8, 16}) {
    const Recovered rec = counterexample_sequence(CounterexampleVariant::ball, k);
    const auto det = [&](const Point& x) { return rec.field.jacobian_at(x).determinant(); };
    const QuadratureResult r = integrate(det, Domain::ball(3, 1.0 / k, Point::Zero(3)), 1e-10);
    CHECK(std::abs(r.value - 4.0 * oracle::pi / 3.0) <= 1e-9);
  }
}

TEST_CASE("counterexample variants agree with x/|x| outside their modified region") {
  for (auto v : {CounterexampleVariant::ball, CounterexampleVariant::cylinder}) {
    const Recovered rec = counterexample_sequence(v, 8);
    check_agreement(rec, 100, 501);
  }
  check_agreement(cylinder_analogue_2d(8), 100, 502);
  CHECK_THROWS_AS(counterexample_sequence(CounterexampleVariant::ball, 1), Error);
}

TEST_CASE("cylinder variant has degree zero and is sphere valued") {
  const Recovered rec = counterexample_sequence(CounterexampleVariant::cylinder, 8);
  gen::Rng rng(601);
  for (int i = 0; i < 2000; ++i) {
    const Point x = rng.in_ball(3, 1.0);
    if (distance_to(rec.field.singular_set(), x) < 1e-6) continue;
    REQUIRE(std::abs(rec.field.evaluate(x).norm() - 1.0) <= 1e-9);
  }
  // The planar analogue has zero degree on every circle around the origin.
  const Recovered an = cylinder_analogue_2d(8);
  for (double r : {0.05, 0.3, 0.9}) CHECK(winding_number(an.field, Loop::circle(Point::Zero(2), r), 256) == 0);
}
