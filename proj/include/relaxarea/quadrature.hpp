#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "relaxarea/domain.hpp"
#include "relaxarea/execution.hpp"
#include "relaxarea/field.hpp"

namespace relaxarea {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t nodes_used = 0;
  bool converged = false;
  bool monte_carlo = false;
};

struct QuadratureOptions {
  double tol = 1e-6;          // relative, per component
  double abs_floor = 1e-10;   // absolute error accepted for components whose value is ~0
  int order = 8;              // Gauss-Legendre points per axis
  int max_depth = 14;         // bisections per axis of a chart
  std::size_t max_cells = 400000;
  Execution execution = Execution::parallel;
  bool throw_on_failure = true;  // NoConvergence is thrown instead of returned
  bool allow_monte_carlo = true;
  std::size_t monte_carlo_strata = 1u << 16;
};

/// Up to four integrand components evaluated in one pass.
using Components = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 4, 1>;
using MultiIntegrand = std::function<Components(const Point&)>;
using Integrand = std::function<double(const Point&)>;

/// Adaptive tensor Gauss-Legendre integration of several components at once.
///
/// Each cell is compared against its two halves along every axis; the error estimate is
/// the largest discrepancy and the cell is bisected along that axis. Cells touching the
/// singular set that hit the depth cap get an analytic C/rho residual bound added.
std::vector<QuadratureResult> integrate_components(const MultiIntegrand& f, int components, const Domain& domain,
                                                   const QuadratureOptions& options = {},
                                                   const SingularSet& singular = {});

QuadratureResult integrate(const Integrand& f, const Domain& domain, double tol = 1e-6,
                           const SingularSet& singular = {}, QuadratureOptions options = {});

/// Stratified Monte Carlo over the domain's charts with the fixed seed 0x5EED.
std::vector<QuadratureResult> integrate_monte_carlo(const MultiIntegrand& f, int components, const Domain& domain,
                                                    std::size_t strata, Execution execution = Execution::parallel);

/// Gauss-Legendre nodes and weights on [-1, 1] (orders 2..10 and 20).
void gauss_rule(int order, std::vector<double>& nodes, std::vector<double>& weights);

// ---- Energies of a field ---------------------------------------------------------------

/// The four energies computed per study row.
struct EnergyMetrics {
  QuadratureResult area;      // integral of area_integrand
  QuadratureResult tv;        // integral of |grad u|
  QuadratureResult graph_bv;  // integral of sqrt(1 + |grad u|^2)
  QuadratureResult minors;    // integral of |M2(grad u)| (second-order minors)
};

EnergyMetrics energy_metrics(const VectorField& field, const Domain& domain, const QuadratureOptions& options = {});

QuadratureResult area_functional(const VectorField& field, const Domain& domain, double tol = 1e-6);

struct SobolevEnergy {
  QuadratureResult tv;
  QuadratureResult graph_bv;
  QuadratureResult minors;
};

SobolevEnergy sobolev_energy(const VectorField& field, const Domain& domain, double tol = 1e-6);

}  // namespace relaxarea
