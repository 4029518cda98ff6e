#include <algorithm>
#include <cmath>

#include "relaxarea/relaxation.hpp"

namespace relaxarea {

namespace {

LimitFit localized_gap(CounterexampleVariant variant, double r, const std::vector<int>& k_schedule,
                       const QuadratureOptions& options, Execution execution) {
  std::vector<double> ks;
  for (int k : k_schedule)
    if (1.0 / k < r) ks.push_back(k);
  if (ks.size() < 3)
    throw Error(ErrorCode::InsufficientData, "subadditivity: fewer than three k with 1/k < r = " + std::to_string(r));
  const ConvergenceReport rep =
      convergence_study("k", counterexample_builder(variant, r, Localization::gap), ks, options, execution);
  if (!rep.area.available) throw Error(ErrorCode::NoConvergence, "subadditivity: localized study did not converge");
  return rep.area;
}

}  // namespace

SubadditivityReport subadditivity_experiment(const std::vector<double>& radii, const std::vector<int>& k_schedule,
                                             const QuadratureOptions& options, Execution execution) {
  if (radii.empty()) throw Error(ErrorCode::InvalidParams, "subadditivity: no radii");
  FieldParams p;
  p.n = 3;
  const VectorField u = make_example_field(FieldKind::sphere_vortex, p);

  SubadditivityReport report;
  for (double r : radii) {
    if (!(r > 0.0) || r > 1.0) throw Error(ErrorCode::InvalidGeometry, "subadditivity: radii must lie in (0, 1]");
    SubadditivityRow row;
    row.radius = r;
    row.ball_fit = localized_gap(CounterexampleVariant::ball, r, k_schedule, options, execution);
    row.cylinder_fit = localized_gap(CounterexampleVariant::cylinder, r, k_schedule, options, execution);
    row.ball_bound = std::max(0.0, row.ball_fit.limit);
    row.cylinder_bound = std::max(0.0, row.cylinder_fit.limit);
    row.chosen = std::min(row.ball_bound, row.cylinder_bound);
    row.overlap_area = energy_metrics(u, Domain::annulus(3, 0.5 * r, r, Point::Zero(3)), options).area.value;
    report.rows.push_back(row);
  }
  std::sort(report.rows.begin(), report.rows.end(),
            [](const SubadditivityRow& a, const SubadditivityRow& b) { return a.radius < b.radius; });

  // Largest margin over ordered pairs (small, big).
  for (const auto& small : report.rows) {
    for (const auto& big : report.rows) {
      if (big.radius <= small.radius) continue;
      const SubadditivityWitness w{small.radius, big.radius, big.ball_bound,
                                   small.cylinder_bound + small.overlap_area};
      if (w.lhs > w.rhs && (!report.witness || w.lhs - w.rhs > report.witness->lhs - report.witness->rhs))
        report.witness = w;
    }
  }
  report.violation_witnessed = report.witness.has_value();
  return report;
}

}  // namespace relaxarea
