#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "cova/lie_algebra.hpp"
#include "cova/reduced_lie.hpp"
#include "cova/tate.hpp"
#include "cova/va_morphism.hpp"

namespace cova {

/// Basis tensor b_{w0,i0} (x) b_{w1,i1} (x) b_{w2,i2} of the cube, b_{w,i} the i-th
/// integral-form basis vector of weight w.
struct CubeKey {
  std::array<int, 3> w{};
  std::array<std::uint32_t, 3> i{};

  auto operator<=>(const CubeKey&) const = default;
  bool diagonal() const { return w[0] == w[1] && w[1] == w[2] && i[0] == i[1] && i[1] == i[2]; }
  int weight() const { return w[0] + w[1] + w[2]; }
};

/// Sparse element of the cube over F_p; no zero coefficients.
using CubeElement = std::map<CubeKey, std::uint32_t>;

std::string to_string(const CubeKey& k);

/// (R (x) IV_L)^{(x)3} for R = F_p, truncated at total weight wmax, with the cyclic
/// automorphism g(x (x) y (x) z) = z (x) x (x) y. Products use the tensor-product mode
/// sum over i + j + k = n - 2 with factor products from integral structure constants.
/// With diagonal_only, only summands landing in weight blocks (w, w, w) are kept.
class TensorCube {
 public:
  using Vec = FieldVector<PrimeField>;

  TensorCube(const ReducedForm& base, int wmax, bool diagonal_only = false);

  const ReducedForm& base() const { return R_; }
  const PrimeField& field() const { return R_.field(); }
  int wmax() const { return wmax_; }
  bool diagonal_only() const { return diag_; }

  std::vector<CubeKey> basis(int n) const;
  CubeElement vacuum() const;
  CubeElement pure(int w0, const Vec& x, int w1, const Vec& y, int w2, const Vec& z) const;
  /// x (x) x (x) x
  CubeElement eta(int w, const Vec& x) const;
  CubeElement g(const CubeElement& a) const;
  CubeElement nu(const CubeElement& a) const;
  CubeElement product(const CubeElement& a, long n, const CubeElement& b) const;
  const CubeElement& product(const CubeKey& a, long n, const CubeKey& b) const;

  /// g-fixed with zero coefficient on every diagonal key; over F_3 this is the norm submodule.
  bool in_norm(const CubeElement& a) const;
  bool is_fixed(const CubeElement& a) const;

 private:
  const ReducedForm& R_;
  int wmax_;
  bool diag_;
  mutable std::map<std::tuple<CubeKey, long, CubeKey>, CubeElement> cache_;
};

void add_to(const PrimeField& f, CubeElement& acc, const CubeElement& x, std::uint32_t c = 1);
CubeElement subtract(const PrimeField& f, const CubeElement& a, const CubeElement& b);

/// Fixed/norm/quotient counts for the cyclic cube of a graded space, by orbit counting.
struct CubeCounts {
  std::size_t dim = 0, fixed = 0, norm = 0, quotient = 0;
};
CubeCounts cube_tate_counts(const std::vector<std::size_t>& base_dims, int n, std::uint32_t p = 3);

/// Tate quotient of the cube by exhaustive linear algebra over F_p, cube weights 0..wmax,
/// with eta(b_t) as the section at weights 3w.
struct EtaTransversal {
  TateQuotient tate;
  std::vector<bool> fixed_is_image_plus_norm;  // per cube weight
  bool eta_vacuum = false;
  ProductCheck additivity;  // eta(x + y) - eta(x) - eta(y) in the norm submodule

  bool ok() const;
};
EtaTransversal eta_transversal(const TensorCube& cube, std::uint64_t seed, std::size_t pairs = 100);

/// (eta a)_m (eta b) for basis a, b of base weight <= w: zero in the quotient unless
/// m = 2 mod 3, and exactly the diagonal summand plus nu of the off-diagonal orbit representatives.
struct ModeSupportReport {
  ProductCheck support;     // m != 2 mod 3 lands in the norm submodule
  ProductCheck expansion;   // product = diagonal summand + nu(orbit representatives)
  std::size_t nonzero_modes = 0;
};
ModeSupportReport mode_support_check(const TensorCube& cube, int w);

/// eta(a)_{3l+2} eta(b) - eta(a_l b) in the norm submodule for basis a, b of base weight <= w.
ProductCheck eta_homomorphism_check(const TensorCube& cube, int w);

/// Fixed points mod norm of the cube with u_{l,new} = u_{3l+2}; elements of new weight w
/// are coordinates on eta(b_t), b_t the weight-w integral basis (cube weight 3w).
class RegradedVA {
 public:
  using Vec = FieldVector<PrimeField>;

  explicit RegradedVA(const TensorCube& cube) : cube_(cube) {}
  const TensorCube& cube() const { return cube_; }
  const PrimeField& field() const { return cube_.field(); }
  std::size_t dim(int w) const { return cube_.base().dim(w); }

  CubeElement lift(int w, const Vec& q) const;
  /// Quotient coordinates of a g-fixed element of cube weight 3w; TheoremViolation if not fixed.
  Vec project(int w, const CubeElement& x) const;
  /// a_m b in the cube, projected; empty when the cube weight is not divisible by 3, in which
  /// case the product must lie in the norm submodule (TheoremViolation otherwise).
  Vec mode(int wa, const Vec& a, long m, int wb, const Vec& b) const;
  Vec product(int wa, const Vec& a, long l, int wb, const Vec& b) const { return mode(wa, a, 3 * l + 2, wb, b); }

 private:
  const TensorCube& cube_;
};

RegradedVA regrade3(const TensorCube& cube);

/// Weight-3 (new weight 1) Lie algebra: [a, b] = a_2 b, (a|b) 1 = a_5 b.
struct Weight3Lie {
  FiniteLie<PrimeField> algebra;
  std::vector<std::vector<std::uint32_t>> form;
};
Weight3Lie weight3_lie(const RegradedVA& V);

struct LieChecks {
  bool antisymmetric = false;
  bool form_symmetric = false;
  bool form_invariant = false;
  std::size_t jacobi_triples = 0;
  std::size_t jacobi_failures = 0;
  bool ok() const { return antisymmetric && form_symmetric && form_invariant && jacobi_failures == 0; }
};
/// Jacobi exhaustively when sample == 0, otherwise on `sample` seeded triples.
LieChecks check_weight3_lie(const Weight3Lie& L, std::uint64_t seed, std::size_t sample = 0);

/// Chevalley basis h_i, e_a as coordinates in the weight-one integral basis mod p.
std::vector<FieldVector<PrimeField>> chevalley_in_weight_one(const ReducedForm& R, const LieAlgebra& g);
/// Number of basis pairs (i, j) whose regraded bracket differs from the Chevalley bracket.
std::size_t chevalley_mismatches(const Weight3Lie& L, const ReducedForm& R, const LieAlgebra& g);

/// [a_{3m+2}, b_{3n+2}] c = [a,b]_{3(m+n)+2} c + m (a|b) delta_{m+n,0} c over weight-one a, b and
/// basis states c of new weight <= wc; states whose intermediate weights exceed the truncation are skipped.
struct AffineReport {
  long m = 0, n = 0;
  ProductCheck identity;
  std::size_t skipped = 0;
  bool central_term_seen = false;
};
AffineReport affine_commutator_check(const RegradedVA& V, long m, long n, int wc);

/// Generalized binomial coefficient mod p (n may be negative).
std::uint32_t binomial_mod(long n, long k, std::uint32_t p);

}  // namespace cova
