#include "cova/cocycle.hpp"

#include <stdexcept>

namespace cova {

Cocycle::Cocycle(const Gram& g) : gram_(g) {}

int Cocycle::operator()(const LatVec& a, const LatVec& b) const {
  long parity = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    parity += static_cast<long>(a[i]) * b[i] * (gram_[i][i] / 2);
    for (std::size_t j = 0; j < i; ++j)
      if (gram_[i][j] != 0) parity += static_cast<long>(a[i]) * b[j] * gram_[i][j];
  }
  return (parity & 1) ? -1 : 1;
}

int CocycleCorrection::eta(const LatVec& v) const {
  long parity = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    if (chi[i] == -1) parity += v[i];
    if (c[i][i] == -1) parity += static_cast<long>(v[i]) * (v[i] - 1) / 2;
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (c[i][j] == -1) parity += static_cast<long>(v[i]) * v[j];
  }
  return (parity & 1) ? -1 : 1;
}

CocycleCorrection cocycle_correction(const Cocycle& eps, const GraphAut& g) {
  const std::size_t r = g.perm.size();
  CocycleCorrection k;
  k.c.assign(r, std::vector<int>(r, 1));
  k.gamma_invariant = true;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      LatVec a(r, 0), b(r, 0);
      a[i] = 1;
      b[j] = 1;
      k.c[i][j] = eps(g.apply(a), g.apply(b)) * eps(a, b);
      if (k.c[i][j] != 1) k.gamma_invariant = false;
    }

  std::vector<LatVec> fixed;
  for (std::size_t i = 0; i < g.fixed_basis.rows(); ++i) {
    LatVec v(r, 0);
    for (const auto& [j, x] : g.fixed_basis.row(i)) v[j] = static_cast<int>(x.get_si());
    fixed.push_back(v);
  }
  auto orbit_ok = [&](const CocycleCorrection& cand) {
    for (std::size_t i = 0; i < r; ++i) {
      LatVec a(r, 0);
      a[i] = 1;
      int prod = 1;
      for (int j = 0; j < g.order; ++j) prod *= cand.eta(g.apply_power(a, j));
      if (prod != 1) return false;
    }
    return true;
  };
  auto fixed_ok = [&](const CocycleCorrection& cand) {
    for (const auto& v : fixed)
      if (cand.eta(v) != 1) return false;
    return true;
  };

  std::optional<CocycleCorrection> fallback;
  for (unsigned long mask = 0; mask < (1ul << r); ++mask) {
    CocycleCorrection cand = k;
    cand.chi.assign(r, 1);
    for (std::size_t i = 0; i < r; ++i)
      if (mask >> i & 1) cand.chi[i] = -1;
    bool ob = orbit_ok(cand);
    if (ob && fixed_ok(cand)) {
      cand.orbit_products_trivial = cand.trivial_on_fixed = true;
      return cand;
    }
    if (ob && !fallback) {
      cand.orbit_products_trivial = true;
      fallback = cand;
    }
  }
  if (fallback) return *fallback;
  throw std::runtime_error("no cocycle correction of order " + std::to_string(g.order) + " exists");
}

CocycleTable build_cocycle(const RootLattice& L, const std::optional<GraphAut>& g) {
  CocycleTable t{Cocycle(L.gram()), g, std::nullopt};
  if (g) t.correction = cocycle_correction(t.eps, *g);
  return t;
}

}  // namespace cova
