#pragma once

#include <array>
#include <vector>

#include "relaxarea/domain.hpp"
#include "relaxarea/execution.hpp"
#include "relaxarea/field.hpp"
#include "relaxarea/quadrature.hpp"

namespace relaxarea {

/// One cell of an integer chain: a point (k = 0, a == b) or the oriented segment a -> b.
struct ChainCell {
  Point a;
  Point b;
  int multiplicity = 0;
};

/// Integer-multiplicity polyhedral chain of dimension 0 or 1.
struct SingularChain {
  int n = 2;
  int k = 0;
  std::vector<ChainCell> cells;
  double h = 0.0;  // lattice spacing; 0 for analytic chains

  bool empty() const noexcept { return cells.empty(); }
};

double chain_mass(const SingularChain& chain);

/// Signed endpoint count at every vertex of a 1-chain; vertices with nonzero total form
/// the returned 0-chain (sorted lexicographically).
SingularChain chain_boundary(const SingularChain& chain);

/// Keeps the cells whose midpoint lies in `domain`.
SingularChain restrict_chain(const SingularChain& chain, const Domain& domain);

/// Chain read off the declared singular set: points become 0-cells, segments 1-cells,
/// each weighted by its declared degree (pieces of degree 0 are dropped).
SingularChain analytic_chain(const VectorField& field);

/// A closed loop: a circle in the x1-x2 plane through `center`, or a closed polyline.
struct Loop {
  enum class Kind { circle, polyline };
  Kind kind = Kind::circle;
  Point center;
  double radius = 0.0;
  std::vector<Point> vertices;

  static Loop circle(Point center, double radius);
  static Loop polyline(std::vector<Point> vertices);
};

/// Degree of an S^1-valued (or nonvanishing R^2-valued) field along a loop: the sum of
/// principal-branch angle increments over 2 pi. Every increment must stay below pi/2;
/// otherwise the loop is resampled at twice the density, at most four times.
int winding_number(const VectorField& field, const Loop& loop, int samples = 64);

/// Sampling lattice over a box: nodes lo + (offset_i + j) h_i, j = 0..N_i.
struct GridSpec {
  Point lo;
  Point hi;
  std::array<int, 3> resolution{64, 64, 64};
  std::array<double, 3> offset{};  // in units of h; irrational defaults keep nodes off flats

  static GridSpec cube(int n, double half_side, int resolution);
  int dim() const { return static_cast<int>(lo.size()); }
  double spacing(int axis) const { return (hi(axis) - lo(axis)) / resolution[axis]; }
  Point node(int i, int j, int k = 0) const;
};

/// Vortices of a planar field: per-plaquette winding of the four corner increments.
SingularChain extract_vortices_2d(const VectorField& field, const GridSpec& grid,
                                  Execution execution = Execution::parallel);

/// Singular lines of a field on R^3: every primal face with nonzero winding d contributes
/// the dual edge through it, oriented along the face normal, with multiplicity d.
SingularChain extract_lines_3d(const VectorField& field, const GridSpec& grid,
                               Execution execution = Execution::parallel);

/// Vertices of chain_boundary(chain) lying strictly inside the lattice node box.
SingularChain interior_boundary(const SingularChain& chain, const GridSpec& grid);

struct RelaxedRhs {
  QuadratureResult graph_bv;  // integral of sqrt(1 + |grad u|^2)
  double mass = 0.0;
  double value = 0.0;         // graph_bv + pi * mass
};

RelaxedRhs relaxed_area_rhs(const VectorField& field, const Domain& domain, const SingularChain& chain,
                            double tol = 1e-6);

}  // namespace relaxarea
