#pragma once

#include <optional>
#include <vector>

#include "cova/graph_aut.hpp"
#include "cova/root_lattice.hpp"

namespace cova {

/// Bimultiplicative sign cocycle on simple roots: eps(a_i, a_j) = 1 for i < j,
/// (-1)^{<a_i,a_i>/2} = -1 for i = j and (-1)^{<a_i,a_j>} for i > j.
class Cocycle {
 public:
  explicit Cocycle(const Gram& g);
  int operator()(const LatVec& a, const LatVec& b) const;
  const Gram& gram() const { return gram_; }

 private:
  Gram gram_;
};

/// Sign function eta: L -> {+-1} making e^b -> eta(b) e^{gamma b} an automorphism,
/// i.e. eta(a+b) = eta(a) eta(b) eps(gamma a, gamma b) eps(a, b).
struct CocycleCorrection {
  std::vector<int> chi;                  // eta on simple roots
  std::vector<std::vector<int>> c;       // c_ij = eps(gamma a_i, gamma a_j) eps(a_i, a_j)
  bool gamma_invariant = false;          // eps(gamma a, gamma b) == eps(a, b) identically
  bool trivial_on_fixed = false;         // eta == 1 on X^gamma
  bool orbit_products_trivial = false;   // prod_j eta(gamma^j a) == 1, so the lift has order |gamma|

  int eta(const LatVec& v) const;
};

struct CocycleTable {
  Cocycle eps;
  std::optional<GraphAut> gamma;
  std::optional<CocycleCorrection> correction;
};

/// Chooses eta by exhaustive search over signs on simple roots, preferring
/// eta trivial on X^gamma with trivial orbit products; falls back to trivial
/// orbit products alone (the (A_{2n},2) Lie-level case, where no choice can
/// be trivial on X^gamma).
CocycleCorrection cocycle_correction(const Cocycle& eps, const GraphAut& g);
CocycleTable build_cocycle(const RootLattice& L, const std::optional<GraphAut>& g = std::nullopt);

}  // namespace cova
