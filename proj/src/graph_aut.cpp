#include "cova/graph_aut.hpp"

#include <stdexcept>

namespace cova {

LatVec GraphAut::apply(const LatVec& v) const {
  LatVec out(v.size(), 0);
  for (std::size_t i = 0; i < v.size(); ++i) out[perm[i]] = v[i];
  return out;
}

LatVec GraphAut::apply_power(const LatVec& v, int k) const {
  LatVec out = v;
  k %= order;
  if (k < 0) k += order;
  for (int j = 0; j < k; ++j) out = apply(out);
  return out;
}

IntMatrix GraphAut::matrix() const {
  IntMatrix m(0, perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) m.append_row({{static_cast<std::size_t>(perm[i]), 1}});
  return m;
}

Gram GraphAut::fixed_gram(const Gram& g) const {
  const std::size_t k = fixed_basis.rows();
  std::vector<LatVec> b;
  for (std::size_t i = 0; i < k; ++i) {
    LatVec v(perm.size(), 0);
    for (const auto& [j, x] : fixed_basis.row(i)) v[j] = static_cast<int>(x.get_si());
    b.push_back(v);
  }
  Gram out(k, std::vector<long>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) out[i][j] = inner(g, b[i], b[j]);
  return out;
}

LatVec GraphAut::fixed_coords(const LatVec& v) const {
  auto c = lattice_coordinates(fixed_basis, to_sparse(v));
  if (!c) throw std::invalid_argument("vector is not fixed by the graph automorphism");
  LatVec out;
  for (const auto& x : *c) out.push_back(static_cast<int>(x.get_si()));
  return out;
}

LatVec GraphAut::from_fixed_coords(const LatVec& c) const {
  SparseRow acc;
  for (std::size_t i = 0; i < c.size(); ++i) acc = row_axpy(acc, c[i], fixed_basis.row(i));
  LatVec out(perm.size(), 0);
  for (const auto& [j, x] : acc) out[j] = static_cast<int>(x.get_si());
  return out;
}

namespace {

std::vector<int> diagram_perm(const RootLattice& L, int order) {
  const int n = L.rank();
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  if (order == 2 && L.family() == 'A' && n >= 2) {
    for (int i = 0; i < n; ++i) p[i] = n - 1 - i;
  } else if (order == 2 && L.family() == 'D') {
    std::swap(p[n - 2], p[n - 1]);
  } else if (order == 3 && L.name() == "D4") {
    p[0] = 2;
    p[2] = 3;
    p[3] = 0;
  } else if (order == 2 && L.name() == "E6") {
    std::swap(p[0], p[5]);
    std::swap(p[2], p[4]);
  } else {
    throw std::invalid_argument("no diagram automorphism of order " + std::to_string(order) + " on " + L.name());
  }
  return p;
}

}  // namespace

GraphAut diagram_automorphism(const RootLattice& L, int order) {
  GraphAut g;
  g.lattice = L.name();
  g.order = order;
  g.perm = diagram_perm(L, order);
  const std::size_t n = L.rank();
  g.fixed_basis = int_kernel(g.matrix() - IntMatrix::identity(n));
  std::vector<LatVec> fixed_roots;
  for (const auto& r : L.roots())
    if (g.apply(r) == r) fixed_roots.push_back(r);
  g.fixed_type = root_system_type(fixed_roots, L.gram());
  return g;
}

GraphAut graph_automorphism(const RootLattice& L, int order) {
  const int n = L.rank();
  GraphAut g;
  if (L.family() == 'D' && order == 2) {
    g = diagram_automorphism(L, order);
    const int m = n - 1;
    g.folded_type = "B" + std::to_string(m);
    g.dual_coxeter = 2 * m - 1;
    g.central_charge = {mpq_class(m + 1), mpq_class(2 * m + 1, 2)};
  } else if (L.family() == 'A' && order == 2 && n % 2 == 1 && n >= 3) {
    g = diagram_automorphism(L, order);
    const int m = (n + 1) / 2;
    g.folded_type = "C" + std::to_string(m);
    g.dual_coxeter = m + 1;
    mpq_class c = mpq_class(2 * m) - mpq_class(3 * m, m + 2);
    c.canonicalize();
    g.central_charge = {mpq_class(2 * m - 1), c};
  } else if (L.name() == "D4" && order == 3) {
    g = diagram_automorphism(L, order);
    g.folded_type = "G2";
    g.dual_coxeter = 4;
    g.central_charge = {mpq_class(4), mpq_class(14, 5)};
  } else if (L.name() == "E6" && order == 2) {
    g = diagram_automorphism(L, order);
    g.folded_type = "F4";
    g.dual_coxeter = 9;
    g.central_charge = {mpq_class(6), mpq_class(26, 5)};
  } else {
    throw std::invalid_argument("(" + L.name() + ", " + std::to_string(order) + ") is not a folding-table row");
  }
  g.tabled = true;
  return g;
}

}  // namespace cova
