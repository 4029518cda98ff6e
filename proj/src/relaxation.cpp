#include "relaxarea/relaxation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <memory>
#include <mutex>


namespace relaxarea {

const QuadratureResult& StudyRow::result(Metric m) const {
  switch (m) {
    case Metric::area:
      return metrics.area;
    case Metric::tv:
      return metrics.tv;
    case Metric::minors:
      return metrics.minors;
  }
  return metrics.area;
}

const LimitFit& ConvergenceReport::fit(Metric m) const {
  switch (m) {
    case Metric::area:
      return area;
    case Metric::tv:
      return tv;
    case Metric::minors:
      return minors;
  }
  return area;
}

namespace {

struct LinearFit {
  double a = 0.0, b = 0.0, sse = std::numeric_limits<double>::infinity();
};

LinearFit solve(const std::vector<double>& h, const std::vector<double>& y, double p) {
  double s1 = 0, sx = 0, sxx = 0, sy = 0, sxy = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double x = std::pow(h[i], p);
    s1 += 1.0;
    sx += x;
    sxx += x * x;
    sy += y[i];
    sxy += x * y[i];
  }
  const double det = s1 * sxx - sx * sx;
  LinearFit f;
  if (!(std::abs(det) > 1e-300)) return f;
  f.b = (s1 * sxy - sx * sy) / det;
  f.a = (sy - f.b * sx) / s1;
  f.sse = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double e = f.a + f.b * std::pow(h[i], p) - y[i];
    f.sse += e * e;
  }
  return f;
}

}  // namespace

LimitFit fit_power_law(const std::vector<double>& h, const std::vector<double>& y) {
  if (h.size() != y.size()) throw Error(ErrorCode::InvalidParams, "fit_power_law: size mismatch");
  if (h.size() < 3) throw Error(ErrorCode::InsufficientData, "extrapolation needs at least three converged rows");
  LimitFit fit;
  fit.available = true;
  fit.rows_used = static_cast<int>(h.size());
  double ymax = 0.0, ymean = 0.0;
  for (double v : y) {
    ymax = std::max(ymax, std::abs(v));
    ymean += v / static_cast<double>(y.size());
  }
  double spread = 0.0;
  for (double v : y) spread = std::max(spread, std::abs(v - ymean));
  if (spread <= 1e-12 * std::max(1.0, ymax)) {
    fit.limit = ymean;
    return fit;
  }

  double best_p = 0.5;
  LinearFit best;
  for (int i = 0; i <= 30; ++i) {
    const double p = 0.5 + 0.05 * i;
    const LinearFit f = solve(h, y, p);
    if (f.sse < best.sse) {
      best = f;
      best_p = p;
    }
  }
  double lo = std::max(0.5, best_p - 0.05), hi = std::min(2.0, best_p + 0.05);
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = solve(h, y, x1).sse, f2 = solve(h, y, x2).sse;
  for (int it = 0; it < 60; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = solve(h, y, x1).sse;
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = solve(h, y, x2).sse;
    }
  }
  const double p = 0.5 * (lo + hi);
  const LinearFit refined = solve(h, y, p);
  if (refined.sse <= best.sse) {
    best = refined;
    best_p = p;
  }
  fit.limit = best.a;
  fit.coefficient = best.b;
  if (h.size() >= 4) fit.rate = best_p;
  double worst = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i)
    worst = std::max(worst, std::abs(best.a + best.b * std::pow(h[i], best_p) - y[i]));
  fit.residual = ymax > 0.0 ? worst / ymax : 0.0;
  return fit;
}

LimitFit extrapolate_limit(const ConvergenceReport& report, Metric metric) {
  std::vector<double> h, y;
  for (const auto& row : report.rows) {
    if (!row.converged) continue;
    h.push_back(report.fit_variable(row.param));
    y.push_back(row.result(metric).value);
  }
  return fit_power_law(h, y);
}

ConvergenceReport convergence_study(const std::string& parameter_name, const StudyBuilder& builder,
                                    std::vector<double> schedule, const QuadratureOptions& options,
                                    Execution execution) {
  if (schedule.size() < 3) throw Error(ErrorCode::InsufficientData, "a convergence study needs three parameters");
  std::sort(schedule.begin(), schedule.end());
  ConvergenceReport report;
  report.parameter_name = parameter_name;
  report.rows.resize(schedule.size());
  QuadratureOptions row_options = options;
  row_options.throw_on_failure = false;

  std::exception_ptr failure;
  std::once_flag failure_once;
  const int count = static_cast<int>(schedule.size());
#pragma omp parallel for schedule(dynamic, 1) if (execution == Execution::parallel)
  for (int i = 0; i < count; ++i) {
    StudyRow& row = report.rows[i];
    row.param = schedule[i];
    const auto start = std::chrono::steady_clock::now();
    try {
      row.metrics = builder(schedule[i], row_options);
      row.converged = row.metrics.area.converged && row.metrics.tv.converged && row.metrics.minors.converged;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NoConvergence) {
        row.converged = false;
      } else {
        std::call_once(failure_once, [&] { failure = std::current_exception(); });
      }
    } catch (...) {
      std::call_once(failure_once, [&] { failure = std::current_exception(); });
    }
    row.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  if (failure) std::rethrow_exception(failure);

  int converged = 0;
  for (const auto& row : report.rows) converged += row.converged ? 1 : 0;
  if (converged >= 3) {
    report.area = extrapolate_limit(report, Metric::area);
    report.tv = extrapolate_limit(report, Metric::tv);
    report.minors = extrapolate_limit(report, Metric::minors);
  }
  return report;
}

StrictVerdict strict_bv_check(const ConvergenceReport& report, double reference_tv, double tol) {
  const LimitFit& f = report.tv;
  if (!f.available || f.residual > kMaxFitResidual) return StrictVerdict::inconclusive;
  const double scale = std::abs(reference_tv);
  if (std::abs(f.limit - reference_tv) <= tol * scale) return StrictVerdict::strict;
  if (f.limit - reference_tv > 3.0 * tol * scale) return StrictVerdict::non_strict;
  return StrictVerdict::inconclusive;
}

const char* to_string(StrictVerdict v) {
  switch (v) {
    case StrictVerdict::strict:
      return "strict";
    case StrictVerdict::non_strict:
      return "non_strict";
    case StrictVerdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

// ---- builders ---------------------------------------------------------------------------

namespace {

void add(QuadratureResult& into, const QuadratureResult& r, double sign) {
  into.value += sign * r.value;
  into.error_estimate += r.error_estimate;
  into.nodes_used += r.nodes_used;
  into.converged = into.converged && r.converged;
  into.monte_carlo = into.monte_carlo || r.monte_carlo;
}

void add(EnergyMetrics& into, const EnergyMetrics& e, double sign) {
  add(into.area, e.area, sign);
  add(into.tv, e.tv, sign);
  add(into.graph_bv, e.graph_bv, sign);
  add(into.minors, e.minors, sign);
}

EnergyMetrics zero_metrics() {
  EnergyMetrics z;
  z.area.converged = z.tv.converged = z.graph_bv.converged = z.minors.converged = true;
  return z;
}

// E(field, domain) computed on first use and shared between rows.
class SharedEnergy {
 public:
  SharedEnergy(VectorField field, Domain domain) : field_(std::move(field)), domain_(std::move(domain)) {}
  const EnergyMetrics& get(const QuadratureOptions& options) {
    std::call_once(once_, [&] { value_ = energy_metrics(field_, domain_, options); });
    return value_;
  }

 private:
  VectorField field_;
  Domain domain_;
  std::once_flag once_;
  EnergyMetrics value_;
};

// Radial pieces centred at the origin, clipped to the ball of radius r.
std::vector<Domain> clip_pieces(const std::vector<Domain>& pieces, double r) {
  std::vector<Domain> out;
  for (const auto& p : pieces) {
    if (p.inner_radius() >= r && p.kind() != DomainKind::ball) continue;
    if (p.radius() <= r) {
      out.push_back(p);
      continue;
    }
    switch (p.kind()) {
      case DomainKind::ball:
        out.push_back(Domain::ball(p.dim(), r, p.center()));
        break;
      case DomainKind::annulus:
        out.push_back(Domain::annulus(p.dim(), p.inner_radius(), r, p.center()));
        break;
      case DomainKind::sector:
        out.push_back(Domain::sector(p.dim(), p.center(), p.inner_radius(), r, p.angle_lo(), p.angle_hi()));
        break;
      default:
        throw Error(ErrorCode::InvalidGeometry, "only radial pieces can be localized");
    }
  }
  return out;
}

}  // namespace

StudyBuilder recovery_builder(std::function<Recovered(double)> make, Domain domain, Localization localization) {
  // E(u, domain) is created from the first construction's input field and shared by every row.
  struct Lazy {
    std::mutex guard;
    std::shared_ptr<SharedEnergy> energy;
  };
  auto lazy = std::make_shared<Lazy>();
  return [make = std::move(make), domain, localization, lazy](double param, const QuadratureOptions& options) {
    const Recovered rec = make(param);
    EnergyMetrics out = zero_metrics();
    if (localization == Localization::full) {
      std::shared_ptr<SharedEnergy> base;
      {
        std::lock_guard<std::mutex> lock(lazy->guard);
        if (!lazy->energy) lazy->energy = std::make_shared<SharedEnergy>(rec.input, domain);
        base = lazy->energy;
      }
      add(out, base->get(options), 1.0);
    }
    add(out, piece_energies(rec, options, false), 1.0);
    if (localization != Localization::pieces) add(out, piece_energies(rec, options, true), -1.0);
    return out;
  };
}

StudyBuilder fixed_field_builder(VectorField field, Domain domain) {
  auto shared = std::make_shared<SharedEnergy>(std::move(field), std::move(domain));
  return [shared](double, const QuadratureOptions& options) { return shared->get(options); };
}

StudyBuilder smoothing_builder(int d, Localization localization) {
  FieldParams p;
  p.degree = d;
  const VectorField u = make_example_field(FieldKind::vortex, p);
  const Point c = Point::Zero(2);
  return recovery_builder([u, c, d](double eps) { return vortex_smoothing_2d(u, c, d, eps); },
                          Domain::ball(2, 1.0, c), localization);
}

StudyBuilder dipole_builder(DipoleProfile profile, Localization localization) {
  FieldParams p;
  p.n = 3;
  const VectorField u = make_example_field(FieldKind::planar_vortex, p);
  const Point a = make_point({0.0, 0.0, -1.0}), b = make_point({0.0, 0.0, 1.0});
  return recovery_builder([u, a, b, profile](double eps) { return cone_dipole(u, a, b, 1, eps, profile); },
                          Domain::ball(3, 1.0, Point::Zero(3)), localization);
}

StudyBuilder chain_disk_builder(int m, int j) {
  if (j < 1 || j > m) throw Error(ErrorCode::InvalidParams, "chain_disk_builder: disk index out of range");
  FieldParams p;
  p.chain_length = m;
  const VectorField u = make_example_field(FieldKind::vortex_chain, p);
  const Point c = vortex_chain_center(j);
  const double R = vortex_chain_radius(j);
  const int d = vortex_chain_degree(j);
  return recovery_builder([u, c, R, d](double s) { return vortex_smoothing_2d(u, c, d, s * R); },
                          Domain::ball(2, R, c), Localization::gap);
}

StudyBuilder counterexample_builder(CounterexampleVariant variant, double r, Localization localization) {
  if (!(r > 0.0) || r > 1.0) throw Error(ErrorCode::InvalidGeometry, "counterexample_builder: need 0 < r <= 1");
  return recovery_builder(
      [variant, r](double k) {
        Recovered rec = counterexample_sequence(variant, static_cast<int>(std::lround(k)));
        rec.pieces = clip_pieces(rec.pieces, r);
        return rec;
      },
      Domain::ball(3, r, Point::Zero(3)), localization);
}

StudyBuilder analogue_builder() {
  return recovery_builder([](double k) { return cylinder_analogue_2d(static_cast<int>(std::lround(k))); },
                          Domain::ball(2, 1.0, Point::Zero(2)), Localization::full);
}

StudyBuilder removal_builder() {
  FieldParams p;
  p.n = 3;
  const VectorField u = make_example_field(FieldKind::hedgehog_projection, p);
  return [u](double r, const QuadratureOptions& options) {
    Recovered rec = remove_point_singularity(u, Point::Zero(3), r, r * r);
    rec.pieces.erase(rec.pieces.begin() + 1, rec.pieces.end());
    return piece_energies(rec, options, false);
  };
}

StudyBuilder extension_builder() {
  FieldParams p;
  p.n = 4;
  const VectorField u = make_example_field(FieldKind::hedgehog_projection, p);
  const Point a = make_point({0.0, 0.0, 0.0, -1.0}), b = make_point({0.0, 0.0, 0.0, 1.0});
  return [u, a, b](double eps, const QuadratureOptions& options) {
    return piece_energies(homogeneous_cone_extension(u, a, b, eps, eps * eps), options, false);
  };
}

ChainGapSummary chain_gap_sum(int m, const std::vector<double>& schedule, const QuadratureOptions& options,
                              Execution execution) {
  ChainGapSummary s;
  for (int j = 1; j <= m; ++j) {
    const ConvergenceReport r = convergence_study("eps", chain_disk_builder(m, j), schedule, options, execution);
    if (!r.area.available) throw Error(ErrorCode::NoConvergence, "chain disk study did not converge", j);
    s.per_disk.push_back(r.area);
    s.total += r.area.limit;
  }
  return s;
}

}  // namespace relaxarea
