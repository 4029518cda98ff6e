#include <cmath>
#include <map>

#include "relaxarea/topology.hpp"

namespace relaxarea {

double chain_mass(const SingularChain& chain) {
  double m = 0.0;
  for (const auto& c : chain.cells) {
    const double w = std::abs(c.multiplicity);
    m += chain.k == 0 ? w : w * (c.b - c.a).norm();
  }
  return m;
}

SingularChain chain_boundary(const SingularChain& chain) {
  SingularChain out;
  out.n = chain.n;
  out.k = 0;
  out.h = chain.h;
  if (chain.k != 1) throw Error(ErrorCode::InvalidParams, "boundary is defined here for 1-chains");
  // Vertices are matched on a grid finer than any lattice spacing in use.
  const double quantum = chain.h > 0.0 ? chain.h / 8.0 : 1e-9;
  using Key = std::array<long long, kMaxSourceDim>;
  std::map<Key, std::pair<Point, int>> acc;
  auto add = [&](const Point& p, int w) {
    Key key{};
    for (int i = 0; i < p.size(); ++i) key[i] = std::llround(p(i) / quantum);
    auto it = acc.find(key);
    if (it == acc.end()) acc.emplace(key, std::make_pair(p, w));
    else it->second.second += w;
  };
  for (const auto& c : chain.cells) {
    add(c.b, c.multiplicity);
    add(c.a, -c.multiplicity);
  }
  for (const auto& [key, pw] : acc)
    if (pw.second != 0) out.cells.push_back({pw.first, pw.first, pw.second});
  return out;
}

SingularChain restrict_chain(const SingularChain& chain, const Domain& domain) {
  SingularChain out = chain;
  out.cells.clear();
  for (const auto& c : chain.cells)
    if (domain.contains(0.5 * (c.a + c.b))) out.cells.push_back(c);
  return out;
}

SingularChain analytic_chain(const VectorField& field) {
  SingularChain out;
  out.n = field.source_dim();
  out.k = -1;
  for (const auto& piece : field.singular_set()) {
    if (piece.degree == 0) continue;
    int k = piece.kind == SingularPiece::Kind::point ? 0 : piece.kind == SingularPiece::Kind::segment ? 1 : 2;
    if (k == 2) throw Error(ErrorCode::InvalidParams, "two-dimensional singular pieces are not represented as chains");
    if (out.k >= 0 && out.k != k) throw Error(ErrorCode::InvalidParams, "singular set mixes dimensions");
    out.k = k;
    out.cells.push_back({piece.a, k == 0 ? piece.a : piece.b, piece.degree});
  }
  if (out.k < 0) out.k = std::max(0, out.n - 2);
  return out;
}

RelaxedRhs relaxed_area_rhs(const VectorField& field, const Domain& domain, const SingularChain& chain, double tol) {
  RelaxedRhs r;
  r.graph_bv = sobolev_energy(field, domain, tol).graph_bv;
  r.mass = chain_mass(chain);
  r.value = r.graph_bv.value + kPi * r.mass;
  return r;
}

}  // namespace relaxarea
