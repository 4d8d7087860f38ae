#include "cova/tate.hpp"

#include <stdexcept>

namespace cova {

TatePiece make_tate_piece(const PrimeField& f, int weight, std::size_t dim, std::vector<FieldVector<PrimeField>> fixed,
                          std::vector<FieldVector<PrimeField>> norm) {
  QuotientSpace<PrimeField> q(f, dim, norm, fixed);
  return TatePiece{weight, dim, std::move(fixed), std::move(norm), std::move(q), {}};
}

const TatePiece& TateQuotient::at(int weight) const {
  for (const auto& t : pieces)
    if (t.weight == weight) return t;
  throw std::out_of_range("TateQuotient: no piece of weight " + std::to_string(weight));
}

bool TateQuotient::invariants_hold() const {
  for (const auto& t : pieces) {
    for (const auto& v : t.norm)
      if (!t.quotient.contains_whole(v)) return false;
    Subspace<PrimeField> c(t.quotient.whole().field(), t.dim);
    for (const auto& v : t.fixed) c.add(v);
    if (c.dim() != t.fixed_dim()) return false;
    if (t.quotient_dim() != t.fixed_dim() - t.norm_dim()) return false;
    if (t.section.empty()) continue;
    if (t.section.size() != t.quotient_dim()) return false;
    for (std::size_t k = 0; k < t.section.size(); ++k) {
      auto c = t.quotient.coords(t.section[k]);
      if (!c) return false;
      for (std::size_t j = 0; j < c->size(); ++j)
        if ((*c)[j] != (j == k ? 1u : 0u)) return false;
    }
  }
  return true;
}

}  // namespace cova
