#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "cova/cocycle.hpp"
#include "cova/fock.hpp"
#include "cova/graph_aut.hpp"
#include "cova/root_lattice.hpp"

namespace cova {

/// Lattice vertex algebra V_L over Q, truncated at weight wmax.
/// Y(e^a, z) = E^-(-a, z) E^+(-a, z) e_a z^a with e_a e^b = eps(a, b) e^{a+b};
/// Heisenberg factors enter through normal-ordered derivative insertion.
/// Holds a product memo; instances are not thread-safe.
class LatticeVA {
 public:
  explicit LatticeVA(Gram g, int wmax = 4);

  const Gram& gram() const { return gram_; }
  int rank() const { return static_cast<int>(gram_.size()); }
  int wmax() const { return wmax_; }
  const Cocycle& cocycle() const { return eps_; }

  int weight(const FockMonomial& m) const { return cova::weight(gram_, m); }
  std::optional<int> weight(const VAElement& a) const { return cova::weight(gram_, a); }

  /// Throws TruncationError for n > wmax.
  std::vector<FockMonomial> basis(int n) const;

  VAElement vacuum() const;
  VAElement exp(const LatVec& b) const;
  /// a(-n) (x) e^0 for a lattice vector a.
  VAElement heis(const LatVec& a, int n = 1) const;
  /// s_{a,n}: coefficient of z^n in exp(sum_k a(-k) z^k / k), as an element of weight n.
  VAElement s_poly(const LatVec& a, int n) const;

  /// a_n b. Zero when the output weight is negative; TruncationError when an
  /// input or the output exceeds wmax.
  VAElement product(const VAElement& a, long n, const VAElement& b) const;
  VAElement product(const FockMonomial& a, long n, const FockMonomial& b) const;

  /// Heisenberg mode a(m) applied to an element, any m.
  VAElement heis_mode(const LatVec& a, long m, const VAElement& v) const;

  VAElement translation(const VAElement& a) const;
  /// omega = 1/2 sum_ij (G^-1)_ij a_i(-1) a_j(-1).
  VAElement virasoro() const;
  /// L(n) = omega_{n+1}.
  VAElement virasoro_mode(long n, const VAElement& v) const;

  /// Positive form: adjoint of a(-n) is a(n), <e^a, e^b> = delta.
  mpq_class form(const FockMonomial& a, const FockMonomial& b) const;
  mpq_class form(const VAElement& a, const VAElement& b) const;
  /// Invariant form (a, b) = <a, theta b>.
  mpq_class invariant_form(const VAElement& a, const VAElement& b) const;

  VAElement theta(const VAElement& a) const;

  void clear_cache() const { cache_.clear(); }

 private:
  using HeisState = std::map<HeisMonomial, mpq_class>;

  HeisState annihilate(const LatVec& a, int m, const HeisMonomial& f) const;
  HeisState apply_annihilator(int index, int m, const LatVec& beta, const HeisState& s) const;
  const HeisState& schur(const LatVec& a, int k) const;
  VAElement compute(const FockMonomial& a, long n, const FockMonomial& b) const;

  Gram gram_;
  int wmax_;
  Cocycle eps_;
  mutable std::map<std::tuple<FockMonomial, long, FockMonomial>, VAElement> cache_;
  mutable std::map<std::pair<LatVec, int>, HeisState> schur_cache_;
};

/// L(0) grading, L(-1) = T, and [L(m), L(n)] = (m - n) L(m + n) + (m^3 - m)/12 rank delta_{m+n,0}
/// on basis states of weight <= wstates; states whose intermediate weights leave the truncation are skipped.
struct VirasoroReport {
  long m = 0, n = 0;
  bool grading = false;
  bool derivative = false;
  std::size_t checked = 0, failures = 0, skipped = 0;
  std::string witness;
  bool ok() const { return grading && derivative && failures == 0; }
};
VirasoroReport virasoro_check(const LatticeVA& V, long m, long n, int wstates);

/// gamma-hat: a_{i1}(-n1)...(x)e^b -> eta(b) a_{perm i1}(-n1)... (x) e^{gamma b}.
struct GammaLift {
  GraphAut gamma;
  CocycleCorrection correction;

  VAElement operator()(const VAElement& a) const;
  FockMonomial permute(const FockMonomial& m) const;
};

GammaLift gamma_lift(const GraphAut& gamma, const CocycleCorrection& c);

}  // namespace cova
