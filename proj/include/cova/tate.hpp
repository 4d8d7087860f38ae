#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cova/field_matrix.hpp"

namespace cova {

/// Fixed points modulo the norm submodule in one weight, in some ambient basis over F_p.
struct TatePiece {
  int weight = 0;
  std::size_t dim = 0;
  std::vector<FieldVector<PrimeField>> fixed, norm;
  QuotientSpace<PrimeField> quotient;
  /// Section of the projection: section[k] projects to the k-th quotient basis vector. Empty if none.
  std::vector<FieldVector<PrimeField>> section;

  std::size_t fixed_dim() const { return quotient.whole_dim(); }
  std::size_t norm_dim() const { return quotient.sub_dim(); }
  std::size_t quotient_dim() const { return quotient.dim(); }
};

TatePiece make_tate_piece(const PrimeField& f, int weight, std::size_t dim, std::vector<FieldVector<PrimeField>> fixed,
                          std::vector<FieldVector<PrimeField>> norm);

struct TateQuotient {
  std::uint32_t p = 0;
  std::vector<TatePiece> pieces;

  const TatePiece& at(int weight) const;
  /// norm inside fixed, quotient dim = fixed dim - norm dim, and section then projection = identity.
  bool invariants_hold() const;
};

struct ProductCheck {
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::string witness;

  void record(bool good, const std::string& what) {
    ++checked;
    if (!good) {
      ++failures;
      if (witness.empty()) witness = what;
    }
  }
  bool ok() const { return failures == 0; }
};

}  // namespace cova
