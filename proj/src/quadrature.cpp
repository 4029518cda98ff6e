#include "relaxarea/quadrature.hpp"

#include <omp.h>

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <exception>
#include <numeric>
#include <random>

namespace relaxarea {

void set_thread_count(int threads) {
  if (threads > 0) omp_set_num_threads(threads);
  else omp_set_num_threads(omp_get_num_procs());
}

int thread_count() { return omp_get_max_threads(); }

namespace {

template <int N>
void boost_rule(std::vector<double>& nodes, std::vector<double>& weights) {
  using G = boost::math::quadrature::gauss<double, N>;
  nodes.clear();
  weights.clear();
  const auto& a = G::abscissa();
  const auto& w = G::weights();
  // Boost stores the nonnegative half; mirror it.
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] == 0.0) continue;
    nodes.push_back(-a[i]);
    weights.push_back(w[i]);
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    nodes.push_back(a[i]);
    weights.push_back(w[i]);
  }
}

}  // namespace

void gauss_rule(int order, std::vector<double>& nodes, std::vector<double>& weights) {
  switch (order) {
    case 2: boost_rule<2>(nodes, weights); break;
    case 3: boost_rule<3>(nodes, weights); break;
    case 4: boost_rule<4>(nodes, weights); break;
    case 5: boost_rule<5>(nodes, weights); break;
    case 6: boost_rule<6>(nodes, weights); break;
    case 7: boost_rule<7>(nodes, weights); break;
    case 8: boost_rule<8>(nodes, weights); break;
    case 9: boost_rule<9>(nodes, weights); break;
    case 10: boost_rule<10>(nodes, weights); break;
    case 20: boost_rule<20>(nodes, weights); break;
    default: throw Error(ErrorCode::InvalidParams, "unsupported Gauss order " + std::to_string(order));
  }
}

namespace {

using Box = std::array<double, kMaxSourceDim>;

struct Rule {
  std::vector<double> x;
  std::vector<double> w;
};

struct Cell {
  int chart = 0;
  Box lo{};
  Box hi{};
  std::array<int, kMaxSourceDim> depth{};
  Components own;    // rule on the whole cell
  Components value;  // sum of the halves along `axis`
  Components err;
  std::array<Components, 2> halves;
  int axis = -1;  // -1: every axis is at the depth cap
};

class Integrator {
 public:
  Integrator(const MultiIntegrand& f, int comps, const Domain::Parametrization& par, const QuadratureOptions& opt,
             const SingularSet& singular)
      : f_(f), comps_(comps), par_(par), opt_(opt), singular_(singular) {
    gauss_rule(opt.order, rule_.x, rule_.w);
  }

  std::vector<QuadratureResult> run();

 private:
  Components apply_rule(const Chart& chart, const Box& lo, const Box& hi, double* growth = nullptr) const;
  void analyze(Cell& cell, const Components& weights) const;
  double residual_radius(const Cell& cell, Point& mid) const;

  const MultiIntegrand& f_;
  int comps_;
  const Domain::Parametrization& par_;
  const QuadratureOptions& opt_;
  const SingularSet& singular_;
  Rule rule_;
  mutable std::size_t nodes_ = 0;
};

Components Integrator::apply_rule(const Chart& chart, const Box& lo, const Box& hi, double* growth) const {
  const int n = chart.n;
  const int q = static_cast<int>(rule_.x.size());
  Box mid{}, half{};
  double jac = 1.0;
  for (int i = 0; i < n; ++i) {
    mid[i] = 0.5 * (lo[i] + hi[i]);
    half[i] = 0.5 * (hi[i] - lo[i]);
    jac *= half[i];
  }
  Components acc = Components::Zero(comps_);
  std::array<int, kMaxSourceDim> idx{};
  double p[kMaxSourceDim];
  Point x(n);
  int total = 1;
  for (int i = 0; i < n; ++i) total *= q;
  for (int k = 0; k < total; ++k) {
    double w = jac;
    for (int i = 0; i < n; ++i) {
      p[i] = mid[i] + half[i] * rule_.x[idx[i]];
      w *= rule_.w[idx[i]];
    }
    const double det = chart.map(p, x);
    if (!par_.excluded || !par_.excluded(x)) {
      const Components v = f_(x);
      if (!v.allFinite()) throw Error(ErrorCode::NonFinite, "integrand returned NaN/Inf");
      acc += (w * det) * v;
      if (growth && !singular_.empty()) {
        const double d = distance_to(singular_, x);
        *growth = std::max(*growth, v.cwiseAbs().maxCoeff() * d);
      }
    }
    for (int i = 0; i < n; ++i) {
      if (++idx[i] < q) break;
      idx[i] = 0;
    }
  }
#pragma omp atomic
  nodes_ += static_cast<std::size_t>(total);
  return acc;
}

void Integrator::analyze(Cell& cell, const Components& weights) const {
  const Chart& chart = par_.charts[cell.chart];
  const int n = chart.n;
  cell.err = Components::Zero(comps_);
  cell.axis = -1;
  double best = -1.0;
  Point mid;
  const double R = residual_radius(cell, mid);
  for (int a = 0; a < n; ++a) {
    const bool capped = cell.depth[a] >= opt_.max_depth;
    // Capped axes still contribute their split difference to the estimate, except near
    // singular sets where the shell bound below takes over.
    if (capped && R > 0.0) continue;
    const double m = 0.5 * (cell.lo[a] + cell.hi[a]);
    Box hi0 = cell.hi, lo1 = cell.lo;
    hi0[a] = m;
    lo1[a] = m;
    const Components h0 = apply_rule(chart, cell.lo, hi0);
    const Components h1 = apply_rule(chart, lo1, cell.hi);
    const Components diff = (cell.own - h0 - h1).cwiseAbs();
    cell.err = cell.err.cwiseMax(diff);
    if (capped) continue;
    const double score = diff.cwiseProduct(weights).sum();
    if (score > best) {
      best = score;
      cell.axis = a;
      cell.halves = {h0, h1};
    }
  }
  if (cell.axis >= 0) {
    cell.value = cell.halves[0] + cell.halves[1];
    return;
  }
  // Depth cap on every axis. Near the singular set add the C/rho shell bound.
  cell.value = cell.own;
  if (R > 0.0) {
    double growth = 0.0;
    apply_rule(chart, cell.lo, cell.hi, &growth);
    const double C = 4.0 * growth;
    const double bound = 4.0 * kPi * C * std::pow(R, n - 1);
    cell.err.array() += bound;
  }
}

// Radius of a ball around the cell when it touches the singular set, 0 otherwise.
double Integrator::residual_radius(const Cell& cell, Point& mid) const {
  if (singular_.empty()) return 0.0;
  const Chart& chart = par_.charts[cell.chart];
  const int n = chart.n;
  double p[kMaxSourceDim];
  for (int i = 0; i < n; ++i) p[i] = 0.5 * (cell.lo[i] + cell.hi[i]);
  chart.map(p, mid);
  double R = 0.0;
  Point corner;
  for (int c = 0; c < (1 << n); ++c) {
    for (int i = 0; i < n; ++i) p[i] = (c >> i) & 1 ? cell.hi[i] : cell.lo[i];
    chart.map(p, corner);
    R = std::max(R, (corner - mid).norm());
  }
  return distance_to(singular_, mid) <= R ? 2.0 * R : 0.0;
}

std::vector<QuadratureResult> Integrator::run() {
  const bool parallel = opt_.execution == Execution::parallel;
  std::vector<Cell> leaves;
  for (int c = 0; c < static_cast<int>(par_.charts.size()); ++c) {
    Cell cell;
    cell.chart = c;
    cell.lo = par_.charts[c].lo;
    cell.hi = par_.charts[c].hi;
    leaves.push_back(cell);
  }
  for (auto& cell : leaves) cell.own = apply_rule(par_.charts[cell.chart], cell.lo, cell.hi);

  auto totals_of = [&](const std::vector<Cell>& cells, Components& val, Components& err) {
    val = Components::Zero(comps_);
    err = Components::Zero(comps_);
    for (const auto& c : cells) {
      val += c.value;
      err += c.err;
    }
  };
  auto weights_from = [&](const Components& val) {
    Components w(comps_);
    for (int i = 0; i < comps_; ++i) w(i) = 1.0 / std::max(opt_.tol * std::abs(val(i)), opt_.abs_floor);
    return w;
  };

  Components own_total = Components::Zero(comps_);
  for (const auto& c : leaves) own_total += c.own;
  Components weights = weights_from(own_total);

  auto analyze_all = [&](std::vector<Cell>& cells, std::size_t from) {
    const long count = static_cast<long>(cells.size() - from);
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
    for (long i = 0; i < count; ++i) {
      try {
        analyze(cells[from + static_cast<std::size_t>(i)], weights);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  };
  analyze_all(leaves, 0);

  Components val, err;
  bool converged = false;
  while (true) {
    totals_of(leaves, val, err);
    weights = weights_from(val);
    const Components normalized = err.cwiseProduct(weights);
    if ((normalized.array() <= 1.0).all()) {
      converged = true;
      break;
    }
    std::vector<std::pair<double, std::size_t>> order;
    double pool = 0.0;
    for (std::size_t i = 0; i < leaves.size(); ++i) {
      if (leaves[i].axis < 0) continue;
      const double e = leaves[i].err.cwiseProduct(weights).maxCoeff();
      order.emplace_back(e, i);
      pool += e;
    }
    if (order.empty() || pool <= 0.0) break;
    std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<char> split(leaves.size(), 0);
    double taken = 0.0;
    std::size_t nsplit = 0;
    for (const auto& [e, i] : order) {
      split[i] = 1;
      ++nsplit;
      taken += e;
      if (taken >= 0.5 * pool) break;
    }
    if (leaves.size() + nsplit > opt_.max_cells) break;
    std::vector<Cell> next;
    next.reserve(leaves.size() + nsplit);
    std::vector<std::size_t> fresh;
    for (std::size_t i = 0; i < leaves.size(); ++i) {
      if (!split[i]) {
        next.push_back(std::move(leaves[i]));
        continue;
      }
      const Cell& parent = leaves[i];
      const int a = parent.axis;
      const double m = 0.5 * (parent.lo[a] + parent.hi[a]);
      for (int side = 0; side < 2; ++side) {
        Cell child;
        child.chart = parent.chart;
        child.lo = parent.lo;
        child.hi = parent.hi;
        (side == 0 ? child.hi : child.lo)[a] = m;
        child.depth = parent.depth;
        child.depth[a] += 1;
        child.own = parent.halves[side];
        fresh.push_back(next.size());
        next.push_back(std::move(child));
      }
    }
    // Children are appended in place; analyze only them (their order is fixed).
    {
      const long count = static_cast<long>(fresh.size());
      std::vector<std::exception_ptr> errors(fresh.size());
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
      for (long k = 0; k < count; ++k) {
        try {
          analyze(next[fresh[static_cast<std::size_t>(k)]], weights);
        } catch (...) {
          errors[static_cast<std::size_t>(k)] = std::current_exception();
        }
      }
      for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    }
    leaves = std::move(next);
  }

  std::vector<QuadratureResult> out(static_cast<std::size_t>(comps_));
  for (int c = 0; c < comps_; ++c) {
    out[c].value = val(c);
    out[c].error_estimate = err(c);
    out[c].nodes_used = nodes_;
    out[c].converged = err(c) <= std::max(opt_.tol * std::abs(val(c)), opt_.abs_floor);
  }
  (void)converged;
  return out;
}

}  // namespace

std::vector<QuadratureResult> integrate_monte_carlo(const MultiIntegrand& f, int comps, const Domain& domain,
                                                    std::size_t strata, Execution execution) {
  const Domain::Parametrization par = domain.parametrize();
  std::vector<QuadratureResult> out(static_cast<std::size_t>(comps));
  if (par.charts.empty()) {
    for (auto& r : out) r.converged = true, r.monte_carlo = true;
    return out;
  }
  const int n = domain.dim();
  const std::size_t per_chart = std::max<std::size_t>(1, strata / par.charts.size());
  const int g = std::max(1, static_cast<int>(std::floor(std::pow(static_cast<double>(per_chart), 1.0 / n))));
  std::size_t cells_per_chart = 1;
  for (int i = 0; i < n; ++i) cells_per_chart *= static_cast<std::size_t>(g);
  const std::size_t total = cells_per_chart * par.charts.size();

  std::vector<Components> mean(total), var(total);
  std::vector<std::exception_ptr> errors(total);
  const bool parallel = execution == Execution::parallel;
#pragma omp parallel for schedule(static) if (parallel)
  for (long s = 0; s < static_cast<long>(total); ++s) {
    try {
      const std::size_t chart_id = static_cast<std::size_t>(s) / cells_per_chart;
      std::size_t rest = static_cast<std::size_t>(s) % cells_per_chart;
      const Chart& chart = par.charts[chart_id];
      double lo[kMaxSourceDim], width[kMaxSourceDim];
      double vol = 1.0;
      for (int i = 0; i < n; ++i) {
        const std::size_t k = rest % static_cast<std::size_t>(g);
        rest /= static_cast<std::size_t>(g);
        width[i] = (chart.hi[i] - chart.lo[i]) / g;
        lo[i] = chart.lo[i] + static_cast<double>(k) * width[i];
        vol *= width[i];
      }
      // Per-stratum seeding keeps the estimate independent of the thread schedule.
      std::mt19937_64 rng(0x5EEDULL ^ (0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(s) + 1)));
      std::uniform_real_distribution<double> U(0.0, 1.0);
      Components sample[2];
      Point x(n);
      for (int j = 0; j < 2; ++j) {
        double p[kMaxSourceDim];
        for (int i = 0; i < n; ++i) p[i] = lo[i] + U(rng) * width[i];
        const double det = chart.map(p, x);
        if (par.excluded && par.excluded(x)) {
          sample[j] = Components::Zero(comps);
        } else {
          sample[j] = f(x) * (det * vol);
          if (!sample[j].allFinite()) throw Error(ErrorCode::NonFinite, "integrand returned NaN/Inf");
        }
      }
      mean[static_cast<std::size_t>(s)] = 0.5 * (sample[0] + sample[1]);
      var[static_cast<std::size_t>(s)] = 0.25 * (sample[0] - sample[1]).array().square().matrix();
    } catch (...) {
      errors[static_cast<std::size_t>(s)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  Components m = Components::Zero(comps), v = Components::Zero(comps);
  for (std::size_t s = 0; s < total; ++s) {
    m += mean[s];
    v += var[s];
  }
  for (int c = 0; c < comps; ++c) {
    out[c].value = m(c);
    out[c].error_estimate = 2.0 * std::sqrt(v(c));
    out[c].nodes_used = 2 * total;
    out[c].monte_carlo = true;
    out[c].converged = false;
  }
  return out;
}

std::vector<QuadratureResult> integrate_components(const MultiIntegrand& f, int comps, const Domain& domain,
                                                   const QuadratureOptions& options, const SingularSet& singular) {
  if (comps < 1 || comps > 4) throw Error(ErrorCode::InvalidParams, "1..4 integrand components supported");
  if (!(options.tol >= 1e-10)) throw Error(ErrorCode::InvalidParams, "tolerance must be >= 1e-10");
  const Domain::Parametrization par = domain.parametrize();
  if (par.charts.empty()) {
    std::vector<QuadratureResult> empty(static_cast<std::size_t>(comps));
    for (auto& r : empty) r.converged = true;
    return empty;
  }
  QuadratureOptions opt = options;
  if (par.excluded) opt.max_cells = std::min<std::size_t>(opt.max_cells, 20000);
  Integrator integ(f, comps, par, opt, singular);
  std::vector<QuadratureResult> res = integ.run();
  const bool ok = std::all_of(res.begin(), res.end(), [](const auto& r) { return r.converged; });
  if (!ok && par.excluded && options.allow_monte_carlo) {
    std::vector<QuadratureResult> mc = integrate_monte_carlo(f, comps, domain, options.monte_carlo_strata, options.execution);
    for (auto& r : mc) r.converged = r.error_estimate <= std::max(options.tol * std::abs(r.value), options.abs_floor);
    res = mc;
  }
  if (options.throw_on_failure) {
    for (std::size_t c = 0; c < res.size(); ++c)
      if (!res[c].converged)
        throw Error(ErrorCode::NoConvergence,
                    "component " + std::to_string(c) + ": estimate " + std::to_string(res[c].error_estimate) +
                        " exceeds tolerance at value " + std::to_string(res[c].value),
                    c);
  }
  return res;
}

QuadratureResult integrate(const Integrand& f, const Domain& domain, double tol, const SingularSet& singular,
                           QuadratureOptions options) {
  options.tol = tol;
  auto g = [&f](const Point& x) {
    Components c(1);
    c(0) = f(x);
    return c;
  };
  return integrate_components(g, 1, domain, options, singular).front();
}

EnergyMetrics energy_metrics(const VectorField& field, const Domain& domain, const QuadratureOptions& options) {
  if (field.source_dim() != domain.dim()) throw Error(ErrorCode::OutOfDomain, "field and domain dimensions differ");
  auto f = [&field](const Point& x) {
    const JacobianMatrix J = field.jacobian_at(x);
    const MinorVector mv = minors2(J);
    const double g2 = J.squaredNorm();
    const double all = mv.norm();
    Components c(4);
    c << std::sqrt(1.0 + g2 + all * all), std::sqrt(g2), std::sqrt(1.0 + g2), mv.second_norm();
    return c;
  };
  const auto r = integrate_components(f, 4, domain, options, field.singular_set());
  return {r[0], r[1], r[2], r[3]};
}

QuadratureResult area_functional(const VectorField& field, const Domain& domain, double tol) {
  QuadratureOptions opt;
  opt.tol = tol;
  auto f = [&field](const Point& x) {
    Components c(1);
    c(0) = area_integrand(field.jacobian_at(x));
    return c;
  };
  if (field.source_dim() != domain.dim()) throw Error(ErrorCode::OutOfDomain, "field and domain dimensions differ");
  return integrate_components(f, 1, domain, opt, field.singular_set()).front();
}

SobolevEnergy sobolev_energy(const VectorField& field, const Domain& domain, double tol) {
  if (field.source_dim() != domain.dim()) throw Error(ErrorCode::OutOfDomain, "field and domain dimensions differ");
  QuadratureOptions opt;
  opt.tol = tol;
  auto f = [&field](const Point& x) {
    const JacobianMatrix J = field.jacobian_at(x);
    const double g2 = J.squaredNorm();
    Components c(3);
    c << std::sqrt(g2), std::sqrt(1.0 + g2), minors2(J).second_norm();
    return c;
  };
  const auto r = integrate_components(f, 3, domain, opt, field.singular_set());
  return {r[0], r[1], r[2]};
}

}  // namespace relaxarea
