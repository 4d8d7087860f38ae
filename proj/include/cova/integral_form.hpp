#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "cova/fock.hpp"
#include "cova/int_matrix.hpp"
#include "cova/lattice_va.hpp"

namespace cova {

/// Lattice inside one weight space. Rows of `basis` are denominator times the
/// coefficients on `ambient`, in Hermite form.
struct GradedZModule {
  int weight = 0;
  std::shared_ptr<const std::vector<FockMonomial>> ambient;
  IntMatrix basis;
  mpz_class denominator = 1;

  std::size_t rank() const { return basis.rows(); }
  std::size_t ambient_dim() const { return ambient->size(); }
};

/// Per-weight Fock basis with column lookup.
class WeightSpace {
 public:
  WeightSpace(const LatticeVA& V, int n);
  int weight() const { return n_; }
  std::size_t dim() const { return basis_->size(); }
  const std::vector<FockMonomial>& basis() const { return *basis_; }
  std::shared_ptr<const std::vector<FockMonomial>> shared() const { return basis_; }
  std::size_t column(const FockMonomial& m) const;
  /// n! times the coefficients; IntegralityError when that is not integral.
  SparseRow to_row(const VAElement& a) const;
  VAElement from_row(const SparseRow& r) const;
  /// Unscaled coefficients; IntegralityError unless they are integers.
  SparseRow integer_row(const VAElement& a) const;
  mpz_class denominator() const { return denom_; }

 private:
  int n_;
  mpz_class denom_;
  std::shared_ptr<const std::vector<FockMonomial>> basis_;
  std::map<FockMonomial, std::size_t> index_;
};

/// Standard integral form IV_L: Z-span of products s_{a1,n1}...s_{ak,nk} (x) e^b.
/// With a sublattice M (rows in L-coordinates) it is IV_M inside V_L.
class IntegralForm {
 public:
  explicit IntegralForm(const LatticeVA& V, std::optional<IntMatrix> sublattice = std::nullopt);

  const LatticeVA& va() const { return V_; }
  const WeightSpace& space(int n) const;
  const GradedZModule& module(int n) const;

  std::optional<std::vector<mpz_class>> coordinates(int n, const VAElement& a) const;
  bool contains(int n, const VAElement& a) const;
  VAElement element(int n, std::size_t i) const;
  std::vector<VAElement> elements(int n) const;

  /// Z-basis of the Heisenberg part S_Z(M) in degree m, as elements with lattice point 0.
  const std::vector<VAElement>& heisenberg_basis(int m) const;

 private:
  const LatticeVA& V_;
  std::optional<IntMatrix> sub_;
  std::vector<LatVec> sub_rows_;
  mutable std::map<int, std::unique_ptr<WeightSpace>> spaces_;
  mutable std::map<int, GradedZModule> modules_;
  mutable std::map<int, std::vector<VAElement>> heis_;
};

/// Graded pieces, weights 0..wmax, of the Z-subalgebra generated by weight-one
/// elements S: weight n is spanned by a_{-k} s with a in S and s of weight n - k.
std::vector<GradedZModule> generated_subva(const IntegralForm& I, const std::vector<VAElement>& S, int wmax);

/// Matrix (row convention) of a linear map on weight n given on monomials,
/// which must send monomials to integral combinations.
template <class F>
IntMatrix ambient_matrix(const WeightSpace& W, F&& f) {
  IntMatrix out = IntMatrix::from_rows(W.dim(), {});
  for (const auto& m : W.basis()) out.append_row(W.integer_row(f(VAElement(m))));
  return out;
}

/// x * M restricted to a lattice: the lattice {b * M : b in basis}.
IntMatrix image_lattice(const IntMatrix& basis, const IntMatrix& m);
/// Sublattice of points fixed by M: {x in lattice : x * M = x}.
IntMatrix fixed_lattice(const IntMatrix& basis, const IntMatrix& m);
/// Matrix of M in the coordinates of a lattice it preserves: rows are coordinates of b_i * M.
IntMatrix restrict_to_lattice(const IntMatrix& basis, const IntMatrix& m);

}  // namespace cova
