#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

#include "cova/int_matrix.hpp"
#include "cova/root_lattice.hpp"

namespace cova {

/// Diagram automorphism of a simply laced root lattice acting on simple-root coordinates.
struct GraphAut {
  std::string lattice;
  int order = 1;
  std::vector<int> perm;  // alpha_i -> alpha_{perm[i]}
  IntMatrix fixed_basis;  // Hermite basis of X^gamma, rows in simple-root coordinates
  std::string fixed_type;
  std::string folded_type;
  int dual_coxeter = 0;                            // of the folded type
  std::pair<mpq_class, mpq_class> central_charge;  // (V_X^gamma, classical VA of the folded type)
  bool tabled = false;

  LatVec apply(const LatVec& v) const;
  LatVec apply_power(const LatVec& v, int k) const;
  /// Row-action matrix: v -> v * matrix().
  IntMatrix matrix() const;
  Gram fixed_gram(const Gram& g) const;
  /// Coordinates of a fixed vector in fixed_basis.
  LatVec fixed_coords(const LatVec& v) const;
  LatVec from_fixed_coords(const LatVec& c) const;
};

/// Rows of the folding table: (D_{n+1},2), (A_{2n-1},2), (D4,3), (E6,2). Throws otherwise.
GraphAut graph_automorphism(const RootLattice& L, int order);
/// Any nontrivial diagram automorphism of the given order, including (A_{2n},2)
/// which has no vertex-algebra folding row but is the Lie-level ancestor of (A1,2).
GraphAut diagram_automorphism(const RootLattice& L, int order);

}  // namespace cova
