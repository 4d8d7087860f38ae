#include "cova/lie_algebra.hpp"

#include <array>
#include <map>
#include <stdexcept>

#include "cova/errors.hpp"

namespace cova {

LieAlgebra::LieAlgebra(RootLattice L, RingDescriptor R) : L_(std::move(L)), R_(R), eps_(L_.gram()) {
  const std::size_t n = dim(), r = rank();
  table_.assign(n * n, {});
  const auto& roots = L_.roots();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < roots.size(); ++k) {
      long c = L_.inner(roots[k], L_.simple_root(static_cast<int>(i)));
      if (c == 0) continue;
      table_[i * n + e_index(k)].push_back({e_index(k), static_cast<int>(c)});
      table_[e_index(k) * n + i].push_back({e_index(k), static_cast<int>(-c)});
    }
  for (std::size_t a = 0; a < roots.size(); ++a)
    for (std::size_t b = 0; b < roots.size(); ++b) {
      const LatVec s = roots[a] + roots[b];
      LieRow row;
      if (is_zero(s)) {
        const int sign = eps_(roots[a], roots[b]);
        for (const auto& t : coroot(roots[a])) row.push_back({t.index, sign * t.coef});
      } else if (L_.inner(roots[a], roots[b]) == -1) {
        row.push_back({*e_index(s), eps_(roots[a], roots[b])});
      }
      table_[e_index(a) * n + e_index(b)] = std::move(row);
    }
}

std::string LieAlgebra::label(std::size_t i) const {
  if (i < rank()) return "h" + std::to_string(i + 1);
  return "e" + to_string(L_.roots()[i - rank()]);
}

std::optional<std::size_t> LieAlgebra::e_index(const LatVec& root) const {
  auto k = L_.root_index(root);
  if (!k) return std::nullopt;
  return e_index(*k);
}

LatVec LieAlgebra::weight(std::size_t basis) const {
  if (basis < rank()) return LatVec(rank(), 0);
  return L_.roots()[basis - rank()];
}

LieRow LieAlgebra::coroot(const LatVec& b) const {
  LieRow row;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b[i] != 0) row.push_back({i, b[i]});
  return row;
}

std::vector<Scalar> LieAlgebra::zero() const { return std::vector<Scalar>(dim(), Scalar::zero(R_)); }

std::vector<Scalar> LieAlgebra::basis_vector(std::size_t i) const {
  auto v = zero();
  v.at(i) = Scalar::one(R_);
  return v;
}

std::vector<Scalar> LieAlgebra::bracket(const std::vector<Scalar>& x, const std::vector<Scalar>& y) const {
  if (x.size() != dim() || y.size() != dim()) throw std::invalid_argument("bracket: element of another algebra");
  for (const auto& s : x)
    if (!(s.ring() == R_)) throw std::invalid_argument("bracket: coefficient ring mismatch");
  for (const auto& s : y)
    if (!(s.ring() == R_)) throw std::invalid_argument("bracket: coefficient ring mismatch");
  auto out = zero();
  for (std::size_t i = 0; i < dim(); ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim(); ++j) {
      if (y[j].is_zero()) continue;
      const Scalar xy = x[i] * y[j];
      for (const auto& t : bracket_basis(i, j)) out[t.index] += xy * Scalar(R_, t.coef);
    }
  }
  return out;
}

QMatrix LieAlgebra::ad_matrix(std::size_t i) const {
  QMatrix m(dim(), std::vector<mpq_class>(dim()));
  for (std::size_t j = 0; j < dim(); ++j)
    for (const auto& t : bracket_basis(i, j)) m[t.index][j] += t.coef;
  return m;
}

namespace {

QMatrix mul(const QMatrix& a, const QMatrix& b) {
  const std::size_t n = a.size();
  QMatrix c(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (sgn(a[i][k]) == 0) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (sgn(b[k][j]) != 0) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

bool is_zero(const QMatrix& m) {
  for (const auto& r : m)
    for (const auto& x : r)
      if (sgn(x) != 0) return false;
  return true;
}

}  // namespace

ChevalleyGenerator chevalley_generator(const LieAlgebra& g, const LatVec& root) {
  auto idx = g.e_index(root);
  if (!idx) throw std::invalid_argument("chevalley_generator: " + to_string(root) + " is not a root");
  const std::size_t n = g.dim();
  ChevalleyGenerator gen{root, {}};
  QMatrix id(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  gen.divided_powers.push_back(id);
  const QMatrix ad = g.ad_matrix(*idx);
  QMatrix cur = id;
  for (int k = 1; k <= static_cast<int>(n); ++k) {
    cur = mul(ad, cur);
    for (auto& r : cur)
      for (auto& x : r) x /= k;
    if (is_zero(cur)) break;
    for (const auto& r : cur)
      for (const auto& x : r)
        if (x.get_den() != 1)
          throw IntegralityError("non-integral divided power of ad e" + to_string(root) + " at order " +
                                 std::to_string(k));
    gen.divided_powers.push_back(cur);
  }
  return gen;
}

ScalarMatrix ChevalleyGenerator::at(const Scalar& t) const {
  const std::size_t n = divided_powers.front().size();
  const RingDescriptor& R = t.ring();
  ScalarMatrix m(n, std::vector<Scalar>(n, Scalar::zero(R)));
  Scalar tk = Scalar::one(R);
  for (const auto& d : divided_powers) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (sgn(d[i][j]) != 0) m[i][j] += tk * Scalar(R, d[i][j]);
    tk *= t;
  }
  return m;
}

std::vector<std::vector<long>> graph_action_matrix(const LieAlgebra& g, const GraphAut& gamma,
                                                   const CocycleCorrection& eta) {
  const std::size_t n = g.dim(), r = g.rank();
  std::vector<std::vector<long>> m(n, std::vector<long>(n, 0));
  for (std::size_t i = 0; i < r; ++i) m[gamma.perm[i]][i] = 1;
  const auto& roots = g.lattice().roots();
  for (std::size_t k = 0; k < roots.size(); ++k) {
    auto target = g.e_index(gamma.apply(roots[k]));
    m[*target][g.e_index(k)] = eta.eta(roots[k]);
  }
  return m;
}

std::vector<std::vector<long>> norm_map_matrix(const std::vector<std::vector<long>>& gm, int order) {
  const std::size_t n = gm.size();
  std::vector<std::vector<long>> acc(n, std::vector<long>(n, 0)), pw(n, std::vector<long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) pw[i][i] = 1;
  for (int j = 0; j < order; ++j) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) acc[a][b] += pw[a][b];
    std::vector<std::vector<long>> next(n, std::vector<long>(n, 0));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t k = 0; k < n; ++k)
        if (gm[a][k] != 0)
          for (std::size_t b = 0; b < n; ++b) next[a][b] += gm[a][k] * pw[k][b];
    pw = std::move(next);
  }
  return acc;
}

ScalarMatrix to_ring(const RingDescriptor& R, const std::vector<std::vector<long>>& m) {
  ScalarMatrix out;
  for (const auto& row : m) {
    std::vector<Scalar> r;
    for (long x : row) r.emplace_back(R, x);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Scalar> mat_apply(const ScalarMatrix& m, const std::vector<Scalar>& v) {
  std::vector<Scalar> out(m.size(), Scalar::zero(v.front().ring()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      if (!m[i][j].is_zero() && !v[j].is_zero()) out[i] += m[i][j] * v[j];
  return out;
}

ScalarMatrix compose(const ScalarMatrix& a, const ScalarMatrix& b) {
  const std::size_t n = a.size(), k = b.size(), m = b.front().size();
  ScalarMatrix c(n, std::vector<Scalar>(m, Scalar::zero(a[0][0].ring())));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l].is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (!b[l][j].is_zero()) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

bool preserves_bracket(const LieAlgebra& g, const ScalarMatrix& m) {
  const std::size_t n = g.dim();
  std::vector<std::vector<Scalar>> cols(n);
  for (std::size_t j = 0; j < n; ++j) {
    cols[j].reserve(n);
    for (std::size_t i = 0; i < n; ++i) cols[j].push_back(m[i][j]);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto lhs = mat_apply(m, g.bracket(g.basis_vector(i), g.basis_vector(j)));
      auto rhs = g.bracket(cols[i], cols[j]);
      if (!(lhs == rhs)) return false;
    }
  return true;
}

std::optional<std::array<std::size_t, 3>> jacobi_violation(const LieAlgebra& g, std::size_t i, std::size_t j,
                                                           std::size_t k) {
  auto br = [&](const std::map<std::size_t, long>& x, std::size_t b) {
    std::map<std::size_t, long> out;
    for (const auto& [a, c] : x)
      for (const auto& t : g.bracket_basis(a, b)) out[t.index] += c * t.coef;
    return out;
  };
  auto single = [](std::size_t a) { return std::map<std::size_t, long>{{a, 1}}; };
  auto sum = [](std::vector<std::map<std::size_t, long>> xs) {
    std::map<std::size_t, long> out;
    for (const auto& x : xs)
      for (const auto& [a, c] : x) out[a] += c;
    return out;
  };
  // [[i,j],k] + [[j,k],i] + [[k,i],j]
  auto total = sum({br(br(single(i), j), k), br(br(single(j), k), i), br(br(single(k), i), j)});
  for (const auto& [a, c] : total)
    if (c != 0) return std::array<std::size_t, 3>{i, j, k};
  return std::nullopt;
}

}  // namespace cova
