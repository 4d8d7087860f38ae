#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cova/root_lattice.hpp"

namespace cova {

/// alpha_i(-n), packed as n << 4 | i.
using HeisFactor = std::uint16_t;

inline HeisFactor heis_factor(int index, int depth) { return static_cast<HeisFactor>((depth << 4) | index); }
inline int factor_index(HeisFactor f) { return f & 15; }
inline int factor_depth(HeisFactor f) { return f >> 4; }

/// Sorted multiset of Heisenberg factors.
using HeisMonomial = std::vector<HeisFactor>;

int heis_degree(const HeisMonomial& m);
HeisMonomial heis_multiply(const HeisMonomial& a, const HeisMonomial& b);

/// alpha_{i1}(-n1) ... alpha_{ik}(-nk) (x) e^beta
struct FockMonomial {
  HeisMonomial factors;
  LatVec beta;

  int heis_degree() const { return cova::heis_degree(factors); }
  friend auto operator<=>(const FockMonomial&, const FockMonomial&) = default;
};

int weight(const Gram& g, const FockMonomial& m);
std::string to_string(const FockMonomial& m);

/// Finite Q-linear combination of Fock monomials.
struct VAElement {
  std::map<FockMonomial, mpq_class> terms;

  VAElement() = default;
  explicit VAElement(const FockMonomial& m, const mpq_class& c = 1) { add(m, c); }

  void add(const FockMonomial& m, const mpq_class& c);
  bool is_zero() const { return terms.empty(); }
  mpq_class coefficient(const FockMonomial& m) const;

  VAElement& operator+=(const VAElement& o);
  VAElement& operator-=(const VAElement& o);
  VAElement& operator*=(const mpq_class& c);
  friend VAElement operator+(VAElement a, const VAElement& b) { return a += b; }
  friend VAElement operator-(VAElement a, const VAElement& b) { return a -= b; }
  friend VAElement operator*(const mpq_class& c, VAElement a) { return a *= c; }
  friend bool operator==(const VAElement& a, const VAElement& b) { return a.terms == b.terms; }
};

/// Common weight of all terms; nullopt for zero or mixed elements.
std::optional<int> weight(const Gram& g, const VAElement& a);
std::string to_string(const VAElement& a);

/// Sorted Heisenberg monomials in `rank` colours of total depth `degree`, graded-lex.
std::vector<HeisMonomial> heisenberg_monomials(int rank, int degree);

/// Weight-n monomials ordered by partition (degree, then lex) and then lattice point (lex).
std::vector<FockMonomial> fock_basis(const Gram& g, int n);

/// Coefficient of q^n in theta_L(q) / prod_k (1 - q^k)^rank.
mpz_class graded_dimension(const Gram& g, int n);

}  // namespace cova
