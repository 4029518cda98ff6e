#pragma once

#include <functional>
#include <vector>

#include "relaxarea/domain.hpp"
#include "relaxarea/field.hpp"
#include "relaxarea/quadrature.hpp"

namespace relaxarea {

/// Output of a recovery construction.
///
/// `pieces` partition the region where the map differs from its input, split along every
/// kink of the construction so that each piece carries a smooth integrand. Energies over
/// a larger domain are assembled as E(u) - sum E(u, piece) + sum E(v, piece).
struct Recovered {
  VectorField field;
  VectorField input;
  std::vector<Domain> pieces;
  std::function<bool(const Point&)> modified;  // true inside the modification region
};

/// Sum of energy_metrics over the pieces, for the constructed map (`use_input` = false)
/// or for the map it replaces.
EnergyMetrics piece_energies(const Recovered& rec, const QuadratureOptions& options = {}, bool use_input = false);

/// Planar vortex core smoothing: v = u outside B_eps(center); on eps/2 <= rho <= eps the
/// angle interpolates linearly in rho from d*theta to a lift of the trace of u; inside
/// B_{eps/2} the map is (2 rho / eps)(cos d theta, sin d theta).
Recovered vortex_smoothing_2d(const VectorField& field, const Point& center, int d, double eps);

enum class DipoleProfile {
  shell_core,  // homotopy shell on 1/2 <= s <= 1, linear degree-d core on s <= 1/2
  model,       // the model map s * u on the whole cone (s = rho / r_eps)
};

/// Replaces u near the oriented segment [a, b] in R^3 (around which u has degree d) inside
/// the cone Delta_eps of profile eps * dist(t, {-L, L}); traces agree on the cone surface.
Recovered cone_dipole(const VectorField& field, const Point& a, const Point& b, int d, double eps,
                      DipoleProfile profile = DipoleProfile::shell_core);

/// Point-singularity removal: u outside B_r(center), u(center + r y/|y|) on delta < |y| < r,
/// and the rescaled radial filler (|y| / delta) u(center + r y/|y|) on B_delta.
/// Pieces: [0] the ring, [1] the inner ball.
Recovered remove_point_singularity(const VectorField& field, const Point& center, double r, double delta);

/// Codimension-3 removal in R^4 around the segment [a, b]: zero-homogeneous extension
/// u(r_eps(t) xi/|xi|, t) on Delta_eps minus Delta_delta and the rescaled radial filler on
/// Delta_delta (the band s <= delta / eps). Pieces: [0] the shell, [1] the core.
Recovered homogeneous_cone_extension(const VectorField& field, const Point& a, const Point& b, double eps,
                                     double delta);

enum class CounterexampleVariant { ball, cylinder };

/// The two approximations of x/|x| : B^3 -> S^2. `ball`: k x inside B_{1/k}. `cylinder`:
/// a zero-degree fold inside the cone of opening 1/k around the upper half axis, with a
/// sphere-valued fill of B_{1/k}.
Recovered counterexample_sequence(CounterexampleVariant variant, int k);

/// Planar analogue of the cylinder variant for x/|x| : B^2 -> S^1: the angle folds back
/// across a sector of width 1/k around pi/2 (degree 0 on every circle), filled by
/// (cos(k r Psi), sin(k r Psi)) inside B_{1/k}.
Recovered cylinder_analogue_2d(int k);

}  // namespace relaxarea
