#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cova/cocycle.hpp"
#include "cova/field_matrix.hpp"
#include "cova/graph_aut.hpp"
#include "cova/integral_form.hpp"
#include "cova/lattice_va.hpp"
#include "cova/tate.hpp"
#include "cova/va_morphism.hpp"

namespace cova {

/// V_X with gamma-hat, IV_X and IV_{X^gamma} inside V_X. Not copyable: the
/// integral forms refer to the vertex algebra member.
class CoveringContext {
 public:
  CoveringContext(const std::string& lattice, int order, int wmax);
  CoveringContext(const CoveringContext&) = delete;
  CoveringContext& operator=(const CoveringContext&) = delete;

  std::string pair() const;
  const RootLattice& lattice() const { return L_; }
  const GraphAut& gamma() const { return gamma_; }
  const CocycleCorrection& correction() const { return *table_.correction; }
  const LatticeVA& va() const { return V_; }
  const IntegralForm& iv() const { return iv_; }
  const IntegralForm& iv_fixed() const { return iv_fixed_; }
  const GammaLift& lift() const { return lift_; }

  /// gamma-hat on the Fock basis of weight n (signed permutation, row convention).
  const IntMatrix& gamma_ambient(int n) const;
  /// gamma-hat in integral-form coordinates.
  const IntMatrix& gamma_lattice(int n) const;
  /// Sum of the powers of gamma_lattice(n).
  IntMatrix norm_lattice_map(int n) const;

 private:
  RootLattice L_;
  GraphAut gamma_;
  CocycleTable table_;
  LatticeVA V_;
  IntegralForm iv_;
  IntegralForm iv_fixed_;
  GammaLift lift_;
  mutable std::map<int, IntMatrix> amb_, lat_;
};

struct CoveringReport {
  std::string pair;
  int weight = 0;
  std::size_t ambient_dim = 0, iv_rank = 0, fixed_rank = 0, sub_rank = 0, norm_rank = 0, sum_rank = 0;
  bool sub_in_fixed = false, norm_in_fixed = false, equal = false;
  std::string witness;

  bool ok() const { return sub_in_fixed && norm_in_fixed && equal; }
};

/// (IV_X)^gamma = IV_{X^gamma} + nu(IV_X) in weight n, as Hermite lattices.
CoveringReport check_covering(const CoveringContext& ctx, int n);

struct CollapseReport {
  std::string pair;
  std::uint32_t p = 0;
  int weight = 0;
  std::size_t dim = 0, fixed_dim = 0, norm_dim = 0;
  bool equal = false;
};

/// nu(R (x) IV_X)_n = (R (x) IV_X)^gamma_n for R = F_p with p prime to |gamma|.
CollapseReport check_coprime_collapse(const CoveringContext& ctx, std::uint32_t p, int n);

struct GeneratorAction {
  std::string label;
  bool preserves_fixed = false, preserves_norm = false, preserves_products = false;
};

struct ReducedVA {
  std::string pair;
  std::uint32_t p = 0;
  TateQuotient tate;
  /// Images of R (x) IV_{X^gamma} and of R (x) VA((IV_X^gamma)_1), per weight.
  std::vector<std::vector<FieldVector<PrimeField>>> sub_image, generated_image;
  ProductCheck well_defined;  // C_k N, N_k C in N and C_k C in C
  ProductCheck sampled;       // (u + x)_k (v + y) - u_k v in N for random u, v in C and x, y in N
  std::vector<bool> sub_covers, generated_covers, sub_injective;
  /// Weight-one quotient products against the reduced Lie algebra of chevalley-lie.
  bool lie_match = false;
  std::size_t lie_quotient_dim = 0;
  std::vector<GeneratorAction> generators;

  std::size_t quotient_dim(int n) const { return tate.at(n).quotient_dim(); }
  bool ok() const;
};

/// Requires char = |gamma|. Weights 0..wmax; products checked for output weight <= wmax.
ReducedVA reduced_va(const CoveringContext& ctx, int wmax, unsigned generator_t = 1, std::uint64_t seed = 1,
                     std::size_t samples = 50);

}  // namespace cova
