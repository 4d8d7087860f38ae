#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "cova/integral_form.hpp"
#include "cova/lattice_va.hpp"
#include "cova/root_lattice.hpp"

namespace cova {

/// re + sqrt(-1) im
struct ComplexElement {
  VAElement re, im;

  friend bool operator==(const ComplexElement&, const ComplexElement&) = default;
};

ComplexElement operator+(const ComplexElement& a, const ComplexElement& b);
ComplexElement operator-(const ComplexElement& a, const ComplexElement& b);
ComplexElement scale(const ComplexElement& a, const mpq_class& re, const mpq_class& im = 0);
ComplexElement product(const LatticeVA& V, const ComplexElement& a, long n, const ComplexElement& b);
/// theta composed with complex conjugation.
ComplexElement conjugation_twist(const LatticeVA& V, const ComplexElement& a);

/// Basis of the theta-varpi fixed points at weight n: x or sqrt(-1) x on the
/// lattice-point-zero monomials (by the parity of the number of factors), and
/// x + theta x, sqrt(-1)(x - theta x) for x on the lex-positive lattice points.
std::vector<ComplexElement> tilde_basis(const LatticeVA& V, int n);

/// Invariant form (a, b) = <a, theta b>, extended bilinearly; the imaginary part
/// must vanish on the real form (TheoremViolation otherwise).
mpq_class tilde_form(const LatticeVA& V, const ComplexElement& a, const ComplexElement& b);
std::vector<std::vector<mpq_class>> tilde_gram(const LatticeVA& V, const std::vector<ComplexElement>& basis);

/// Leading principal minors by exact elimination.
std::vector<mpq_class> leading_principal_minors(const std::vector<std::vector<mpq_class>>& m);
bool positive_definite(const std::vector<std::vector<mpq_class>>& m);

/// Membership in Z[1/2] (x) IV_L for both parts and invariance under theta-varpi.
bool in_half_integral_real_form(const IntegralForm& I, int n, const ComplexElement& a);

/// H_a = sqrt(-1) a(-1), X+_a = e^a + e^-a, X-_a = sqrt(-1)(e^a - e^-a) for positive roots.
struct CompactTableReport {
  std::size_t entries = 0;
  std::size_t literal_mismatches = 0;    // against the table exactly as printed
  std::size_t corrected_mismatches = 0;  // against the table with [H, X-] = -(a,b) X+ and the (a,b) = 1 entries
  std::size_t sign_mismatches = 0;       // literal mismatches of the [H_a, X-_b] sign family
  std::size_t inner_one_mismatches = 0;  // literal mismatches with (a,b) = 1
  std::string literal_witness;
  std::string corrected_witness;
};
CompactTableReport compact_bracket_table(const LatticeVA& V, const RootLattice& L);

}  // namespace cova
