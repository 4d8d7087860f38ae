#pragma once

#include <gmpxx.h>

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cova/cocycle.hpp"
#include "cova/field_matrix.hpp"
#include "cova/graph_aut.hpp"
#include "cova/ring.hpp"
#include "cova/root_lattice.hpp"

namespace cova {

struct LieTerm {
  std::size_t index;
  int coef;
};
using LieRow = std::vector<LieTerm>;

using ScalarMatrix = std::vector<std::vector<Scalar>>;  // column j is the image of basis j
using QMatrix = std::vector<std::vector<mpq_class>>;

/// Chevalley-basis Lie algebra: basis h_1..h_r followed by e_alpha in root order.
/// Structure constants are integers determined by the cocycle:
///   [h_i, e_a] = <a, a_i> e_a, [e_a, e_-a] = eps(a,-a) h_a, [e_a, e_b] = eps(a,b) e_{a+b}.
class LieAlgebra {
 public:
  LieAlgebra(RootLattice L, RingDescriptor R);

  const RootLattice& lattice() const { return L_; }
  const RingDescriptor& ring() const { return R_; }
  const Cocycle& cocycle() const { return eps_; }
  std::size_t rank() const { return static_cast<std::size_t>(L_.rank()); }
  std::size_t dim() const { return rank() + L_.roots().size(); }
  std::string label(std::size_t i) const;

  std::size_t h_index(std::size_t i) const { return i; }
  std::size_t e_index(std::size_t root) const { return rank() + root; }
  std::optional<std::size_t> e_index(const LatVec& root) const;
  /// Root (as lattice vector) of a basis index, zero for Cartan elements.
  LatVec weight(std::size_t basis) const;
  /// h_b = sum b_i h_i as a sparse row.
  LieRow coroot(const LatVec& b) const;

  const LieRow& bracket_basis(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }

  std::vector<Scalar> zero() const;
  std::vector<Scalar> basis_vector(std::size_t i) const;
  std::vector<Scalar> bracket(const std::vector<Scalar>& x, const std::vector<Scalar>& y) const;

  template <class Field>
  FieldVector<Field> bracket(const Field& f, const FieldVector<Field>& x, const FieldVector<Field>& y) const {
    FieldVector<Field> out(dim(), f.zero());
    for (std::size_t i = 0; i < dim(); ++i) {
      if (f.is_zero(x[i])) continue;
      for (std::size_t j = 0; j < dim(); ++j) {
        if (f.is_zero(y[j])) continue;
        const auto xy = f.mul(x[i], y[j]);
        for (const auto& t : bracket_basis(i, j)) out[t.index] = f.add(out[t.index], f.mul(xy, f.from_long(t.coef)));
      }
    }
    return out;
  }

  /// ad(basis_i) over the rationals, column convention.
  QMatrix ad_matrix(std::size_t i) const;

 private:
  RootLattice L_;
  RingDescriptor R_;
  Cocycle eps_;
  std::vector<LieRow> table_;
};

/// exp(t ad e_a) stored as the divided powers (ad e_a)^k / k!, each verified integral.
struct ChevalleyGenerator {
  LatVec root;
  std::vector<QMatrix> divided_powers;  // k = 0, 1, ...

  ScalarMatrix at(const Scalar& t) const;
  template <class Field>
  FieldMatrix<Field> at(const Field& f, typename Field::value_type t) const {
    const std::size_t n = divided_powers.front().size();
    FieldMatrix<Field> m(f, n, n);
    auto tk = f.one();
    for (const auto& d : divided_powers) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (sgn(d[i][j]) != 0) m(i, j) = f.add(m(i, j), f.mul(tk, f.from_rational(d[i][j])));
      tk = f.mul(tk, t);
    }
    return m;
  }
};

/// Throws IntegralityError if a divided power has a non-integral entry.
ChevalleyGenerator chevalley_generator(const LieAlgebra& g, const LatVec& root);

/// h_i -> h_{pi(i)}, e_a -> eta(a) e_{gamma a}; integer matrix (column convention).
std::vector<std::vector<long>> graph_action_matrix(const LieAlgebra& g, const GraphAut& gamma,
                                                   const CocycleCorrection& eta);
/// sum_{j<p} gamma^j
std::vector<std::vector<long>> norm_map_matrix(const std::vector<std::vector<long>>& gamma_matrix, int order);

template <class Field>
FieldMatrix<Field> to_field(const Field& f, const std::vector<std::vector<long>>& m) {
  FieldMatrix<Field> out(f, m.size(), m.empty() ? 0 : m.front().size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) out(i, j) = f.from_long(m[i][j]);
  return out;
}

ScalarMatrix to_ring(const RingDescriptor& R, const std::vector<std::vector<long>>& m);
std::vector<Scalar> mat_apply(const ScalarMatrix& m, const std::vector<Scalar>& v);
ScalarMatrix compose(const ScalarMatrix& a, const ScalarMatrix& b);

/// True when m[x,y] = [mx,my] for every pair of basis elements.
bool preserves_bracket(const LieAlgebra& g, const ScalarMatrix& m);

/// First basis triple violating the Jacobi identity over the integers, if any.
std::optional<std::array<std::size_t, 3>> jacobi_violation(const LieAlgebra& g, std::size_t i, std::size_t j,
                                                           std::size_t k);

}  // namespace cova
