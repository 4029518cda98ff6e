#include <cmath>
#include <exception>
#include <limits>
#include <vector>

#include "relaxarea/topology.hpp"

namespace relaxarea {

GridSpec GridSpec::cube(int n, double half_side, int resolution) {
  if (n < 2 || n > 3) throw Error(ErrorCode::InvalidParams, "lattices are 2D or 3D");
  if (resolution < 8) throw Error(ErrorCode::InvalidParams, "grid resolution must be >= 8 per axis");
  GridSpec g;
  g.lo = Point::Constant(n, -half_side);
  g.hi = Point::Constant(n, half_side);
  g.resolution = {resolution, resolution, resolution};
  // Irrational fractions of h: no node lands on a coordinate plane or a rational flat.
  g.offset = {std::sqrt(2.0) - 1.0, std::sqrt(5.0) - 2.0, std::sqrt(3.0) - 1.0};
  return g;
}

Point GridSpec::node(int i, int j, int k) const {
  Point p(dim());
  const int idx[3] = {i, j, k};
  for (int a = 0; a < dim(); ++a) p(a) = lo(a) + (offset[a] + idx[a]) * spacing(a);
  return p;
}

namespace {

constexpr int kUniformLevels = 3;
constexpr int kMaxAdaptiveDepth = 48;
constexpr int kMaxEdgeSamples = 4096;

double angle_at(const VectorField& field, const Point& x) {
  const Value u = field.evaluate(x);
  return std::atan2(u(1), u(0));
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Bisects only the pieces that still turn by pi/2 or more. Resolves edges passing close to
// a singular line; an edge through the line (or a discontinuous field) stays NaN.
double adaptive_increment(const VectorField& field, const Point& a, const Point& b, double ang_a, double ang_b,
                          int depth, int& budget) {
  const double d = std::remainder(ang_b - ang_a, kTwoPi);
  if (std::abs(d) < 0.5 * kPi) return d;
  if (depth == 0 || --budget < 0) return kNaN;
  const Point m = 0.5 * (a + b);
  double ang_m;
  try {
    ang_m = angle_at(field, m);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SingularPoint) return kNaN;
    throw;
  }
  return adaptive_increment(field, a, m, ang_a, ang_m, depth - 1, budget) +
         adaptive_increment(field, m, b, ang_m, ang_b, depth - 1, budget);
}

// Principal-branch increment along a lattice edge. Pieces turning by pi/2 or more are
// resampled on a uniform 2x, 4x, 8x subdivision; pieces still failing at 8x are bisected
// adaptively. NaN marks an edge that stays ambiguous.
double edge_increment(const VectorField& field, const Point& a, const Point& b, double ang_a, double ang_b) {
  const double d = std::remainder(ang_b - ang_a, kTwoPi);
  if (std::abs(d) < 0.5 * kPi) return d;
  for (int level = 1; level <= kUniformLevels; ++level) {
    const int parts = 1 << level;
    std::vector<double> ang(parts + 1);
    ang[0] = ang_a;
    ang[parts] = ang_b;
    try {
      for (int p = 1; p < parts; ++p) ang[p] = angle_at(field, a + (b - a) * (static_cast<double>(p) / parts));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::SingularPoint) return kNaN;
      throw;
    }
    double total = 0.0;
    bool ok = true;
    for (int p = 0; p < parts && ok; ++p) {
      const double s = std::remainder(ang[p + 1] - ang[p], kTwoPi);
      ok = std::abs(s) < 0.5 * kPi;
      total += s;
    }
    if (ok) return total;
    if (level < kUniformLevels) continue;
    int budget = kMaxEdgeSamples;
    total = 0.0;
    for (int p = 0; p < parts; ++p) {
      const Point pa = a + (b - a) * (static_cast<double>(p) / parts);
      const Point pb = a + (b - a) * (static_cast<double>(p + 1) / parts);
      total += adaptive_increment(field, pa, pb, ang[p], ang[p + 1], kMaxAdaptiveDepth, budget);
    }
    return total;
  }
  return kNaN;
}

struct Lattice {
  const GridSpec& g;
  int N0, N1, N2;  // cells per axis (N2 = 0 in 2D)
  std::vector<double> ang, ex, ey, ez;

  long node_index(int i, int j, int k) const { return i + (N0 + 1L) * (j + (N1 + 1L) * k); }
  long ex_index(int i, int j, int k) const { return i + N0 * (j + (N1 + 1L) * k); }
  long ey_index(int i, int j, int k) const { return i + (N0 + 1L) * (j + static_cast<long>(N1) * k); }
  long ez_index(int i, int j, int k) const { return i + (N0 + 1L) * (j + (N1 + 1L) * k); }
};

template <typename F>
void parallel_for(long count, bool parallel, F&& body) {
  std::exception_ptr first;
  long first_at = count;
#pragma omp parallel for schedule(static) if (parallel)
  for (long i = 0; i < count; ++i) {
    try {
      body(i);
    } catch (...) {
#pragma omp critical(relaxarea_lattice_error)
      if (i < first_at) {
        first_at = i;
        first = std::current_exception();
      }
    }
  }
  if (first) std::rethrow_exception(first);
}

Lattice build_lattice(const VectorField& field, const GridSpec& g, bool parallel) {
  const int n = g.dim();
  if (field.target_dim() != 2) throw Error(ErrorCode::InvalidParams, "lattice extraction needs a planar target");
  if (field.source_dim() != n) throw Error(ErrorCode::InvalidParams, "grid and field dimensions differ");
  for (int a = 0; a < n; ++a)
    if (g.resolution[a] < 8) throw Error(ErrorCode::InvalidParams, "grid resolution must be >= 8 per axis");
  Lattice L{g, g.resolution[0], g.resolution[1], n == 3 ? g.resolution[2] : 0, {}, {}, {}, {}};
  const long nodes = (L.N0 + 1L) * (L.N1 + 1L) * (L.N2 + 1L);
  L.ang.resize(static_cast<std::size_t>(nodes));
  parallel_for(nodes, parallel, [&](long id) {
    const int i = static_cast<int>(id % (L.N0 + 1));
    const int j = static_cast<int>((id / (L.N0 + 1)) % (L.N1 + 1));
    const int k = static_cast<int>(id / ((L.N0 + 1L) * (L.N1 + 1)));
    L.ang[static_cast<std::size_t>(id)] = angle_at(field, g.node(i, j, k));
  });
  auto fill = [&](std::vector<double>& out, int di, int dj, int dk, int ni, int nj, int nk) {
    const long count = static_cast<long>(ni) * nj * nk;
    out.resize(static_cast<std::size_t>(count));
    parallel_for(count, parallel, [&](long id) {
      const int i = static_cast<int>(id % ni);
      const int j = static_cast<int>((id / ni) % nj);
      const int k = static_cast<int>(id / (static_cast<long>(ni) * nj));
      out[static_cast<std::size_t>(id)] =
          edge_increment(field, g.node(i, j, k), g.node(i + di, j + dj, k + dk),
                         L.ang[static_cast<std::size_t>(L.node_index(i, j, k))],
                         L.ang[static_cast<std::size_t>(L.node_index(i + di, j + dj, k + dk))]);
    });
  };
  fill(L.ex, 1, 0, 0, L.N0, L.N1 + 1, L.N2 + 1);
  fill(L.ey, 0, 1, 0, L.N0 + 1, L.N1, L.N2 + 1);
  if (n == 3) fill(L.ez, 0, 0, 1, L.N0 + 1, L.N1 + 1, L.N2);
  return L;
}

int face_winding(double a, double b, double c, double d, std::size_t face) {
  const double s = a + b + c + d;
  if (std::isnan(s)) throw Error(ErrorCode::AmbiguousWinding, "face " + std::to_string(face) + " is ambiguous", face);
  const double w = s / kTwoPi;
  const double r = std::round(w);
  if (std::abs(w - r) > 1e-6) throw Error(ErrorCode::AmbiguousWinding, "non-integer face winding", face);
  return static_cast<int>(r);
}

}  // namespace

SingularChain extract_vortices_2d(const VectorField& field, const GridSpec& grid, Execution execution) {
  if (grid.dim() != 2) throw Error(ErrorCode::InvalidParams, "extract_vortices_2d needs n = 2");
  const bool parallel = execution == Execution::parallel;
  const Lattice L = build_lattice(field, grid, parallel);
  const long faces = static_cast<long>(L.N0) * L.N1;
  std::vector<int> w(static_cast<std::size_t>(faces));
  parallel_for(faces, parallel, [&](long id) {
    const int i = static_cast<int>(id % L.N0), j = static_cast<int>(id / L.N0);
    w[static_cast<std::size_t>(id)] =
        face_winding(L.ex[L.ex_index(i, j, 0)], L.ey[L.ey_index(i + 1, j, 0)], -L.ex[L.ex_index(i, j + 1, 0)],
                     -L.ey[L.ey_index(i, j, 0)], static_cast<std::size_t>(id));
  });
  SingularChain out;
  out.n = 2;
  out.k = 0;
  out.h = grid.spacing(0);
  for (long id = 0; id < faces; ++id) {
    if (w[static_cast<std::size_t>(id)] == 0) continue;
    const int i = static_cast<int>(id % L.N0), j = static_cast<int>(id / L.N0);
    const Point c = 0.5 * (grid.node(i, j) + grid.node(i + 1, j + 1));
    out.cells.push_back({c, c, w[static_cast<std::size_t>(id)]});
  }
  return out;
}

SingularChain extract_lines_3d(const VectorField& field, const GridSpec& grid, Execution execution) {
  if (grid.dim() != 3) throw Error(ErrorCode::InvalidParams, "extract_lines_3d needs n = 3");
  const bool parallel = execution == Execution::parallel;
  const Lattice L = build_lattice(field, grid, parallel);
  const int N0 = L.N0, N1 = L.N1, N2 = L.N2;
  // Faces normal to z, x, y in that order; each block is indexed (i, j, k) lexicographically
  // with i fastest.
  const long nz = static_cast<long>(N0) * N1 * (N2 + 1);
  const long nx = (N0 + 1L) * N1 * N2;
  const long ny = static_cast<long>(N0) * (N1 + 1) * N2;
  std::vector<int> w(static_cast<std::size_t>(nz + nx + ny));
  parallel_for(nz + nx + ny, parallel, [&](long id) {
    const std::size_t face = static_cast<std::size_t>(id);
    if (id < nz) {
      const int i = static_cast<int>(id % N0), j = static_cast<int>((id / N0) % N1),
                k = static_cast<int>(id / (static_cast<long>(N0) * N1));
      w[face] = face_winding(L.ex[L.ex_index(i, j, k)], L.ey[L.ey_index(i + 1, j, k)], -L.ex[L.ex_index(i, j + 1, k)],
                             -L.ey[L.ey_index(i, j, k)], face);
    } else if (id < nz + nx) {
      const long r = id - nz;
      const int i = static_cast<int>(r % (N0 + 1)), j = static_cast<int>((r / (N0 + 1)) % N1),
                k = static_cast<int>(r / ((N0 + 1L) * N1));
      w[face] = face_winding(L.ey[L.ey_index(i, j, k)], L.ez[L.ez_index(i, j + 1, k)], -L.ey[L.ey_index(i, j, k + 1)],
                             -L.ez[L.ez_index(i, j, k)], face);
    } else {
      const long r = id - nz - nx;
      const int i = static_cast<int>(r % N0), j = static_cast<int>((r / N0) % (N1 + 1)),
                k = static_cast<int>(r / (static_cast<long>(N0) * (N1 + 1)));
      w[face] = face_winding(L.ez[L.ez_index(i, j, k)], L.ex[L.ex_index(i, j, k + 1)], -L.ez[L.ez_index(i + 1, j, k)],
                             -L.ex[L.ex_index(i, j, k)], face);
    }
  });
  SingularChain out;
  out.n = 3;
  out.k = 1;
  out.h = grid.spacing(0);
  const double hx = grid.spacing(0), hy = grid.spacing(1), hz = grid.spacing(2);
  for (long id = 0; id < nz + nx + ny; ++id) {
    const int d = w[static_cast<std::size_t>(id)];
    if (d == 0) continue;
    Point c, step = Point::Zero(3);
    if (id < nz) {
      const int i = static_cast<int>(id % N0), j = static_cast<int>((id / N0) % N1),
                k = static_cast<int>(id / (static_cast<long>(N0) * N1));
      c = 0.5 * (grid.node(i, j, k) + grid.node(i + 1, j + 1, k));
      step(2) = 0.5 * hz;
    } else if (id < nz + nx) {
      const long r = id - nz;
      const int i = static_cast<int>(r % (N0 + 1)), j = static_cast<int>((r / (N0 + 1)) % N1),
                k = static_cast<int>(r / ((N0 + 1L) * N1));
      c = 0.5 * (grid.node(i, j, k) + grid.node(i, j + 1, k + 1));
      step(0) = 0.5 * hx;
    } else {
      const long r = id - nz - nx;
      const int i = static_cast<int>(r % N0), j = static_cast<int>((r / N0) % (N1 + 1)),
                k = static_cast<int>(r / (static_cast<long>(N0) * (N1 + 1)));
      c = 0.5 * (grid.node(i, j, k) + grid.node(i + 1, j, k + 1));
      step(1) = 0.5 * hy;
    }
    out.cells.push_back({c - step, c + step, d});
  }
  return out;
}

SingularChain interior_boundary(const SingularChain& chain, const GridSpec& grid) {
  SingularChain bd = chain_boundary(chain);
  SingularChain out = bd;
  out.cells.clear();
  const int n = grid.dim();
  const Point first = grid.node(0, 0, 0);
  const Point last = grid.node(grid.resolution[0], grid.resolution[1], n == 3 ? grid.resolution[2] : 0);
  for (const auto& c : bd.cells) {
    bool inside = true;
    for (int a = 0; a < n; ++a) inside = inside && c.a(a) > first(a) && c.a(a) < last(a);
    if (inside) out.cells.push_back(c);
  }
  return out;
}

}  // namespace relaxarea
