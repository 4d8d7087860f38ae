#pragma once

#include <cstdint>
#include <string>

#include "cova/lattice_va.hpp"
#include "cova/va_morphism.hpp"

namespace cova {

struct AxiomReport {
  std::size_t checked = 0, failures = 0, rejected = 0;
  std::string witness;

  bool ok() const { return failures == 0; }
};

/// Borcherds identity on seeded random triples of basis states of weight <= wbasis with
/// m, n, q in [-range, range]. Triples needing a weight past the truncation are rejected
/// and redrawn, up to 50 draws per requested triple.
AxiomReport borcherds_check(const LatticeVA& V, std::uint64_t seed, std::size_t triples, int wbasis, long range = 3);
/// Same over F_p on the reduced integral form, with integral-form basis states.
AxiomReport borcherds_check(const ReducedForm& R, std::uint64_t seed, std::size_t triples, int wbasis, long range = 3);

/// 1_{-1} a = a, 1_n a = 0 (n != -1), a_{-1} 1 = a, a_n 1 = 0 (n >= 0) on all basis states of weight <= w.
AxiomReport vacuum_creation_check(const LatticeVA& V, int w);
/// (Da)_n b = -n a_{n-1} b for basis a of weight <= wa, b of weight <= wb, n in [-1, 3].
AxiomReport translation_check(const LatticeVA& V, int wa, int wb);

}  // namespace cova
