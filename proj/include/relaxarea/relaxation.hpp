#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "relaxarea/execution.hpp"
#include "relaxarea/quadrature.hpp"
#include "relaxarea/recovery.hpp"

namespace relaxarea {

enum class Metric { area, tv, minors };

struct StudyRow {
  double param = 0.0;
  EnergyMetrics metrics;
  double wall_seconds = 0.0;
  bool converged = true;

  const QuadratureResult& result(Metric m) const;
};

/// Least-squares fit of a + b h^p. `rate` is set only when at least four rows entered the
/// fit and the data are not constant.
struct LimitFit {
  bool available = false;
  double limit = 0.0;
  double coefficient = 0.0;
  std::optional<double> rate;
  double residual = 0.0;  // max |fit - y| / max |y|
  int rows_used = 0;
};

/// Rows sorted by parameter. For `k` studies the fit variable is h = 1/k, otherwise h = param.
struct ConvergenceReport {
  std::string parameter_name = "eps";
  std::vector<StudyRow> rows;
  LimitFit area;
  LimitFit tv;
  LimitFit minors;

  const LimitFit& fit(Metric m) const;
  double fit_variable(double param) const { return parameter_name == "k" ? 1.0 / param : param; }
};

/// Energies of one member of a sequence, at parameter `param`.
using StudyBuilder = std::function<EnergyMetrics(double param, const QuadratureOptions& options)>;

/// Runs the builder on every schedule entry and fits the limits. Quadrature failures mark
/// the row unconverged; such rows stay in the report but are left out of the fits.
ConvergenceReport convergence_study(const std::string& parameter_name, const StudyBuilder& builder,
                                    std::vector<double> schedule, const QuadratureOptions& options = {},
                                    Execution execution = Execution::parallel);

/// Fits a + b h^p to the converged rows: p on a 0.05 grid over [0.5, 2], then golden-section
/// refinement. Throws InsufficientData below three rows.
LimitFit fit_power_law(const std::vector<double>& h, const std::vector<double>& y);
LimitFit extrapolate_limit(const ConvergenceReport& report, Metric metric = Metric::area);

enum class StrictVerdict { strict, non_strict, inconclusive };

/// Compares the extrapolated total variation with `reference_tv`. A fit residual above 5%
/// always gives `inconclusive`.
StrictVerdict strict_bv_check(const ConvergenceReport& report, double reference_tv, double tol);

const char* to_string(StrictVerdict v);

inline constexpr double kMaxFitResidual = 0.05;

// ---- Study builders ---------------------------------------------------------------------

/// What a recovery study reports per row.
enum class Localization {
  full,    // E(v, domain), assembled as E(u, domain) - E(u, pieces) + E(v, pieces)
  pieces,  // E(v, pieces): the energy inside the modification region
  gap,     // E(v, pieces) - E(u, pieces)
};

/// Generic recovery study: `make(param)` builds the construction. E(u, domain) is computed
/// once and shared by every row.
StudyBuilder recovery_builder(std::function<Recovered(double)> make, Domain domain, Localization localization);

/// Energies of a fixed field; every row is identical.
StudyBuilder fixed_field_builder(VectorField field, Domain domain);

/// Vortex of degree d on B^2 smoothed at scale eps.
StudyBuilder smoothing_builder(int d = 1, Localization localization = Localization::full);

/// Cone dipole around the x3 axis diameter of B^3 for planar_vortex, at aperture eps.
StudyBuilder dipole_builder(DipoleProfile profile = DipoleProfile::model,
                            Localization localization = Localization::pieces);

/// Smoothing of disk j of vortex_chain(m) at radius s * R_j; parameter s; reports the gap.
StudyBuilder chain_disk_builder(int m, int j);

/// Counterexample sequences of x/|x| localized to B_r; parameter k.
StudyBuilder counterexample_builder(CounterexampleVariant variant, double r = 1.0,
                                    Localization localization = Localization::full);

/// Planar cylinder analogue on B^2; parameter k.
StudyBuilder analogue_builder();

/// Point removal for the hedgehog field on B^3 at radius r = param, delta = r^2;
/// reports the energies of the ring piece.
StudyBuilder removal_builder();

/// Homogeneous cone extension for the hedgehog field on R^4 around the x4 axis segment,
/// aperture eps = param, delta = eps^2; reports the shell and core energies.
StudyBuilder extension_builder();

/// Sum over the first m disks of vortex_chain(m) of the extrapolated per-disk area gaps.
struct ChainGapSummary {
  std::vector<LimitFit> per_disk;
  double total = 0.0;
};
ChainGapSummary chain_gap_sum(int m, const std::vector<double>& schedule, const QuadratureOptions& options = {},
                              Execution execution = Execution::parallel);

// ---- Subadditivity ----------------------------------------------------------------------

struct SubadditivityRow {
  double radius = 0.0;
  double ball_bound = 0.0;      // extrapolated area gap of the ball variant in B_r
  double cylinder_bound = 0.0;  // extrapolated area gap of the cylinder variant in B_r
  double chosen = 0.0;          // min of the two
  double overlap_area = 0.0;    // A(x/|x|, B_r minus B_{r/2})
  LimitFit ball_fit;
  LimitFit cylinder_fit;
};

/// The inequality chain behind a witnessed violation. With the equality for the large
/// ball, subadditivity over the cover B_R = B_r + (B_R minus B_{r/2}) would force
/// ball_bound(R) <= cylinder_bound(r) + overlap_area(r).
struct SubadditivityWitness {
  double r_small = 0.0;
  double r_big = 0.0;
  double lhs = 0.0;  // ball_bound(R)
  double rhs = 0.0;  // cylinder_bound(r) + overlap_area(r)
};

struct SubadditivityReport {
  std::vector<SubadditivityRow> rows;
  bool violation_witnessed = false;
  std::optional<SubadditivityWitness> witness;
};

SubadditivityReport subadditivity_experiment(const std::vector<double>& radii, const std::vector<int>& k_schedule,
                                             const QuadratureOptions& options = {},
                                             Execution execution = Execution::parallel);

}  // namespace relaxarea
