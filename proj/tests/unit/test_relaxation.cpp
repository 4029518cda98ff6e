#include <cmath>
#include <vector>

#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"
#include "relaxarea/relaxation.hpp"
#include "relaxarea/topology.hpp"

using namespace relaxarea;

namespace {

const std::vector<double> kEps{0.2, 0.1, 0.05, 0.025};

// Builder returning prescribed metrics y(param).
StudyBuilder synthetic(std::function<double(double)> area, std::function<double(double)> tv) {
  return [area, tv](double p, const QuadratureOptions&) {
    EnergyMetrics e;
    e.area.value = area(p);
    e.tv.value = tv(p);
    e.graph_bv.value = area(p);
    e.minors.value = 0.0;
    for (auto* r : {&e.area, &e.tv, &e.graph_bv, &e.minors}) r->converged = true;
    return e;
  };
}

}  // namespace

TEST_CASE("exact linear family extrapolates to its limit") {
  const LimitFit f = fit_power_law({0.2, 0.1, 0.05, 0.025}, {1.2, 1.1, 1.05, 1.025});
  REQUIRE(f.available);
  CHECK(f.limit == doctest::Approx(1.0).epsilon(1e-9));
  REQUIRE(f.rate.has_value());
  CHECK(*f.rate == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(f.residual <= 1e-9);
}

TEST_CASE("property: power laws are recovered") {
  gen::Rng rng(0xF17);
  for (int t = 0; t < 50; ++t) {
    const double a = rng.uniform(-3.0, 3.0), b = rng.uniform(0.5, 4.0) * (rng.integer(0, 1) ? 1 : -1);
    const double p = rng.uniform(0.6, 1.9);
    std::vector<double> y;
    for (double h : kEps) y.push_back(a + b * std::pow(h, p));
    const LimitFit f = fit_power_law(kEps, y);
    REQUIRE(f.limit == doctest::Approx(a).epsilon(1e-6).scale(1.0));
    REQUIRE(*f.rate == doctest::Approx(p).epsilon(1e-4));
  }
}

TEST_CASE("three rows give a limit but no rate; fewer give InsufficientData") {
  const LimitFit f = fit_power_law({0.2, 0.1, 0.05}, {1.2, 1.1, 1.05});
  CHECK(f.available);
  CHECK_FALSE(f.rate.has_value());
  try {
    fit_power_law({0.2}, {1.2});
    FAIL("expected InsufficientData");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InsufficientData);
  }
  CHECK_THROWS_AS(convergence_study("eps", synthetic([](double h) { return 1 + h; }, [](double) { return 1.0; }), {0.2}),
                  Error);
  ConvergenceReport r;
  r.rows.resize(2);
  CHECK_THROWS_AS(extrapolate_limit(r), Error);
}

TEST_CASE("constant builder: rate skipped and strict against its own TV") {
  FieldParams p;
  p.constant = make_point({0.6, 0.8});
  const VectorField c = make_example_field(FieldKind::constant, p);
  const ConvergenceReport r = convergence_study("eps", fixed_field_builder(c, Domain::ball(2, 1.0, Point::Zero(2))), kEps);
  REQUIRE(r.rows.size() == 4);
  for (const auto& row : r.rows) CHECK(row.metrics.area.value == r.rows.front().metrics.area.value);
  CHECK(r.area.available);
  CHECK_FALSE(r.area.rate.has_value());
  CHECK(r.area.limit == doctest::Approx(oracle::pi).epsilon(1e-8));
  CHECK(strict_bv_check(r, r.rows.front().metrics.tv.value, 0.01) == StrictVerdict::strict);
}

TEST_CASE("rows are sorted by parameter") {
  const ConvergenceReport r = convergence_study(
      "eps", synthetic([](double h) { return 2 + h; }, [](double h) { return 1 + h; }), {0.05, 0.2, 0.025, 0.1});
  for (std::size_t i = 1; i < r.rows.size(); ++i) CHECK(r.rows[i - 1].param < r.rows[i].param);
}

TEST_CASE("strict verdict thresholds") {
  const auto study = [](double excess) {
    return convergence_study(
        "eps", synthetic([](double) { return 1.0; }, [excess](double h) { return 1.0 + excess + h; }), kEps);
  };
  CHECK(strict_bv_check(study(0.0), 1.0, 0.01) == StrictVerdict::strict);
  CHECK(strict_bv_check(study(0.02), 1.0, 0.01) == StrictVerdict::inconclusive);
  CHECK(strict_bv_check(study(0.5), 1.0, 0.01) == StrictVerdict::non_strict);
  // A noisy study cannot be called either way.
  const ConvergenceReport noisy = convergence_study(
      "eps", synthetic([](double) { return 1.0; }, [](double h) { return 1.0 + (h == 0.05 ? 1.0 : 0.0); }), kEps);
  CHECK(strict_bv_check(noisy, 1.0, 0.01) == StrictVerdict::inconclusive);
}

TEST_CASE("serial and parallel studies agree") {
  const ConvergenceReport a = convergence_study("eps", smoothing_builder(), {0.2, 0.1, 0.05}, {}, Execution::serial);
  const ConvergenceReport b = convergence_study("eps", smoothing_builder(), {0.2, 0.1, 0.05}, {}, Execution::parallel);
  for (std::size_t i = 0; i < a.rows.size(); ++i) CHECK(a.rows[i].metrics.area.value == b.rows[i].metrics.area.value);
}

TEST_CASE("smoothing study respects the energy lower bound and is strict") {
  const ConvergenceReport r = convergence_study("eps", smoothing_builder(), kEps);
  const VectorField u = make_example_field(FieldKind::vortex, {});
  const RelaxedRhs rhs = relaxed_area_rhs(u, Domain::ball(2, 1.0, Point::Zero(2)), analytic_chain(u));
  const double slack = r.area.residual * r.area.limit + 1e-6 * rhs.value;
  CHECK(r.area.limit >= rhs.value - slack);
  CHECK(std::abs(r.area.limit - rhs.value) <= 0.01 * rhs.value);
  CHECK(strict_bv_check(r, 2.0 * oracle::pi, 0.01) == StrictVerdict::strict);
}

TEST_CASE("planar vortex dipole study respects the energy lower bound") {
  const ConvergenceReport r = convergence_study("eps", dipole_builder(DipoleProfile::shell_core, Localization::full), kEps);
  FieldParams p;
  p.n = 3;
  const VectorField u = make_example_field(FieldKind::planar_vortex, p);
  const RelaxedRhs rhs = relaxed_area_rhs(u, Domain::ball(3, 1.0, Point::Zero(3)), analytic_chain(u));
  CHECK(rhs.mass == doctest::Approx(2.0));
  CHECK(r.area.limit >= rhs.value - (r.area.residual * r.area.limit + 1e-6 * rhs.value));
}

TEST_CASE("vortex chain gaps grow with the number of disks") {
  for (int m : {3, 6}) {
    const ChainGapSummary s = chain_gap_sum(m, kEps);
    REQUIRE(static_cast<int>(s.per_disk.size()) == m);
    CHECK(s.total >= m * oracle::pi * 0.98);
  }
}

TEST_CASE("cylinder analogue is not strict") {
  const ConvergenceReport r = convergence_study("k", analogue_builder(), {8, 16, 32, 64});
  CHECK(strict_bv_check(r, 2.0 * oracle::pi, 0.01) == StrictVerdict::non_strict);
  CHECK(r.tv.limit - 2.0 * oracle::pi > 0.5);
}

TEST_CASE("subadditivity experiment witnesses a violation") {
  const SubadditivityReport r = subadditivity_experiment({0.2, 0.9}, {8, 16, 32, 64});
  REQUIRE(r.rows.size() == 2);
  for (const auto& row : r.rows) {
    CHECK(row.ball_bound >= 0.0);
    CHECK(row.cylinder_bound >= 0.0);
    CHECK(row.chosen == std::min(row.ball_bound, row.cylinder_bound));
  }
  CHECK(r.rows[0].cylinder_bound < r.rows[0].ball_bound);
  REQUIRE(r.violation_witnessed);
  REQUIRE(r.witness.has_value());
  // The witness is reproducible from the stored rows.
  const auto& w = *r.witness;
  const auto row = [&](double rad) {
    for (const auto& x : r.rows)
      if (x.radius == rad) return x;
    FAIL("missing radius");
    return r.rows.front();
  };
  CHECK(w.lhs == row(w.r_big).ball_bound);
  CHECK(w.rhs == row(w.r_small).cylinder_bound + row(w.r_small).overlap_area);
  CHECK(w.lhs > w.rhs);
}
