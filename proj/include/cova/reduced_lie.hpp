#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cova/cocycle.hpp"
#include "cova/field_matrix.hpp"
#include "cova/graph_aut.hpp"
#include "cova/lie_algebra.hpp"

namespace cova {

/// Finite-dimensional Lie algebra over a field given by sparse structure constants.
template <class Field>
class FiniteLie {
 public:
  using T = typename Field::value_type;
  using Vec = FieldVector<Field>;
  using Sparse = std::vector<std::pair<std::size_t, T>>;

  FiniteLie(Field f, std::size_t dim, const std::function<Vec(std::size_t, std::size_t)>& basis_bracket)
      : f_(f), n_(dim), table_(dim * dim) {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        Vec v = basis_bracket(i, j);
        for (std::size_t k = 0; k < n_; ++k)
          if (!f_.is_zero(v[k])) table_[i * n_ + j].emplace_back(k, v[k]);
      }
  }

  const Field& field() const { return f_; }
  std::size_t dim() const { return n_; }
  Vec zero() const { return Vec(n_, f_.zero()); }
  Vec unit(std::size_t i) const {
    Vec v = zero();
    v[i] = f_.one();
    return v;
  }
  const Sparse& basis_bracket(std::size_t i, std::size_t j) const { return table_[i * n_ + j]; }

  Vec bracket(const Vec& x, const Vec& y) const {
    Vec out = zero();
    for (std::size_t i = 0; i < n_; ++i) {
      if (f_.is_zero(x[i])) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (f_.is_zero(y[j])) continue;
        const T c = f_.mul(x[i], y[j]);
        for (const auto& [k, v] : table_[i * n_ + j]) out[k] = f_.add(out[k], f_.mul(c, v));
      }
    }
    return out;
  }

  bool is_abelian() const {
    for (const auto& t : table_)
      if (!t.empty()) return false;
    return true;
  }

  bool is_antisymmetric() const {
    for (std::size_t i = 0; i < n_; ++i) {
      if (!table_[i * n_ + i].empty()) return false;
      for (std::size_t j = 0; j < i; ++j) {
        Vec a = bracket(unit(i), unit(j)), b = bracket(unit(j), unit(i));
        for (std::size_t k = 0; k < n_; ++k)
          if (!f_.is_zero(f_.add(a[k], b[k]))) return false;
      }
    }
    return true;
  }

  std::optional<std::array<std::size_t, 3>> jacobi_violation() const {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        for (std::size_t k = j + 1; k < n_; ++k) {
          Vec s = bracket(bracket(unit(i), unit(j)), unit(k));
          Vec b = bracket(bracket(unit(j), unit(k)), unit(i));
          Vec c = bracket(bracket(unit(k), unit(i)), unit(j));
          for (std::size_t l = 0; l < n_; ++l)
            if (!f_.is_zero(f_.add(s[l], f_.add(b[l], c[l])))) return std::array<std::size_t, 3>{i, j, k};
        }
    return std::nullopt;
  }

  /// Intersection of the kernels of ad(basis_j).
  std::vector<Vec> center() const {
    FieldMatrix<Field> m(f_, n_ * n_, n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        for (const auto& [k, v] : table_[i * n_ + j]) m(j * n_ + k, i) = v;
    return m.right_kernel();
  }

  /// Closure of span(S) under bracketing with the whole algebra.
  std::vector<Vec> ideal_generated_by(const std::vector<Vec>& gens) const {
    Subspace<Field> s(f_, n_);
    std::vector<Vec> queue;
    for (const auto& g : gens)
      if (s.add(g)) queue.push_back(g);
    while (!queue.empty()) {
      Vec v = std::move(queue.back());
      queue.pop_back();
      for (std::size_t j = 0; j < n_; ++j) {
        Vec w = bracket(v, unit(j));
        if (s.add(w)) queue.push_back(std::move(w));
      }
    }
    return s.basis();
  }

  bool is_ideal(const std::vector<Vec>& basis) const {
    Subspace<Field> s(f_, n_);
    for (const auto& b : basis) s.add(b);
    for (const auto& b : basis)
      for (std::size_t j = 0; j < n_; ++j)
        if (!s.contains(bracket(b, unit(j)))) return false;
    return true;
  }

 private:
  Field f_;
  std::size_t n_;
  std::vector<Sparse> table_;
};

/// Fixed subalgebra C, norm ideal N = Im(nu) ∩ C and quotient C/N for an ancestor
/// (X, gamma) over F_p, together with the covering map from the subalgebra g' of
/// gamma-fixed roots.
struct ReducedLie {
  using Vec = FieldVector<PrimeField>;

  ReducedLie(LieAlgebra alg, GraphAut g, CocycleCorrection e, PrimeField f)
      : field(f), algebra(std::move(alg)), gamma(std::move(g)), eta(std::move(e)),
        gamma_matrix(f, 0, 0), nu_matrix(f, 0, 0) {}

  std::string pair;
  std::string ancestor;
  int order = 0;
  PrimeField field{2};
  LieAlgebra algebra;
  GraphAut gamma;
  CocycleCorrection eta;
  FieldMatrix<PrimeField> gamma_matrix;
  FieldMatrix<PrimeField> nu_matrix;

  std::vector<Vec> fixed;        // basis of C in the ambient basis
  std::vector<Vec> norm;         // basis of N
  std::vector<Vec> cover;        // basis of g' (h_b for simple b of X', e_b for b in X')
  std::vector<LatVec> cover_roots;
  bool norm_is_ideal = false;
  bool norm_in_fixed = false;

  std::optional<FiniteLie<PrimeField>> fixed_algebra;     // in the coordinates of `fixed`
  std::optional<FiniteLie<PrimeField>> quotient_algebra;  // in the representatives of C/N
  std::optional<FiniteLie<PrimeField>> cover_algebra;     // in the coordinates of `cover`
  std::optional<QuotientSpace<PrimeField>> quotient;      // N inside C, ambient coordinates
  std::vector<Vec> cover_projection;  // image in C/N of each cover basis element
  std::vector<Vec> cover_kernel;      // kernel of the covering map, cover coordinates
  bool covering_surjective = false;
  bool kernel_central = false;

  std::size_t dim_fixed() const { return fixed.size(); }
  std::size_t dim_norm() const { return norm.size(); }
  std::size_t dim_quotient() const { return fixed.size() - norm.size(); }
};

/// Ancestor of an exceptional pair: (A2,3) -> (D4,3), (A1,2) -> (A2,2),
/// (D4,2) -> (E6,2), (D_n,2) -> (D_{n+1},2) for n = 3 or n > 4.
std::pair<std::string, int> exceptional_ancestor(std::string_view xprime, int p);

ReducedLie reduced_algebra(std::string_view xprime, int p);
/// Same machinery for an arbitrary (ancestor, order) over F_q.
ReducedLie reduce_ancestor(std::string_view ancestor, int order, unsigned q, const std::string& label);

struct GeneratorCheck {
  std::string label;
  bool preserves_fixed = false;
  bool preserves_norm = false;
  bool invertible = false;
  bool bracket_automorphism = false;
  bool lifts_to_cover = true;  // false: no automorphism of g' induces it
  bool ok() const { return preserves_fixed && preserves_norm && invertible && bracket_automorphism; }
};

struct ExceptionalActionReport {
  std::string pair;
  std::vector<GeneratorCheck> generators;
  bool identity_at_zero = false;
  bool moves_beyond_cover = false;
  bool all_ok() const;
};

/// Long-root generators x_a(t) for gamma-fixed roots and orbit products over
/// mutually orthogonal short orbits, each checked to descend to C/N.
ExceptionalActionReport exceptional_action_check(const ReducedLie& r, unsigned t = 1);

/// Matrix (over F_p, column convention on the ambient algebra) of an ancestor-fixed generator.
std::vector<std::pair<std::string, FieldMatrix<PrimeField>>> fixed_group_generators(const ReducedLie& r, unsigned t);

/// Induced map on C/N in the quotient representatives; nullopt if C or N is not preserved.
std::optional<FieldMatrix<PrimeField>> induced_on_quotient(const ReducedLie& r, const FieldMatrix<PrimeField>& m);

}  // namespace cova
