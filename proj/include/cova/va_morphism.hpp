#pragma once

#include <gmpxx.h>

#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "cova/field_matrix.hpp"
#include "cova/integral_form.hpp"
#include "cova/lattice_va.hpp"

namespace cova {

enum class MorphismKind { GammaLift, Theta, ChevalleyGenerator, Norm, ConjugationTwist };
std::string to_string(MorphismKind k);

using VAMap = std::function<VAElement(const VAElement&)>;

/// Weight-preserving linear map given by its images of Fock monomials.
struct VAMorphism {
  MorphismKind kind;
  std::string label;
  std::map<FockMonomial, VAElement> image;

  VAElement operator()(const VAElement& a) const;
};

/// Tabulates f on all monomials of weight <= wmax.
VAMorphism tabulate(const LatticeVA& V, MorphismKind kind, std::string label, const VAMap& f);
VAMorphism theta_morphism(const LatticeVA& V);
VAMorphism gamma_morphism(const LatticeVA& V, const GammaLift& g);

/// Matrix of f on the weight-n integral form (row i = coordinates of f(b_i)).
/// Throws IntegralityError when f does not preserve the lattice.
IntMatrix lattice_matrix(const IntegralForm& I, int n, const VAMap& f);

/// First (a, b, k) with f(a_k b) != f(a)_k f(b) among all basis monomial
/// pairs with weights <= wa_max and output weight <= V.wmax().
struct ProductWitness {
  FockMonomial a, b;
  long mode = 0;
};
std::optional<ProductWitness> product_violation(const LatticeVA& V, const VAMap& f, int w_in);

/// exp(t (e^a)_0) on the integral form: per weight, the divided powers
/// (e^a)_0^k / k! as integer matrices in integral-form coordinates.
struct ChevalleyAction {
  LatVec root;
  std::map<int, std::vector<IntMatrix>> divided_powers;

  IntMatrix at(int n, const mpz_class& t) const;
  FieldMatrix<PrimeField> at(const PrimeField& f, int n, std::uint32_t t) const;
  /// Over Q on Fock elements, t rational.
  VAElement apply(const LatticeVA& V, const VAElement& a, const mpq_class& t) const;
};

/// Throws IntegralityError if a divided power leaves the integral form.
ChevalleyAction va_generator_action(const IntegralForm& I, const LatVec& root, int wmax);

/// R (x) IV_L for R = F_p: coordinates in the integral-form basis reduced mod p,
/// with products from integral structure constants.
class ReducedForm {
 public:
  using Vec = FieldVector<PrimeField>;

  ReducedForm(const IntegralForm& I, std::uint32_t p) : I_(I), f_(p) {}
  const PrimeField& field() const { return f_; }
  const IntegralForm& form() const { return I_; }
  std::size_t dim(int n) const { return I_.module(n).rank(); }

  /// Coordinates mod p; IntegralityError if a is not in IV_L.
  Vec reduce(int n, const VAElement& a) const;
  Vec reduce(const std::vector<mpz_class>& coords) const;
  FieldMatrix<PrimeField> reduce(const IntMatrix& m) const;
  /// a_k b for a of weight wa and b of weight wb; the result has weight wa + wb - k - 1.
  Vec product(int wa, const Vec& a, long k, int wb, const Vec& b) const;
  const std::vector<mpz_class>& structure(int wa, std::size_t i, long k, int wb, std::size_t j) const;

 private:
  const IntegralForm& I_;
  PrimeField f_;
  mutable std::map<std::tuple<int, std::size_t, long, int, std::size_t>, std::vector<mpz_class>> table_;
};

FieldVector<PrimeField> row_times(const PrimeField& f, const FieldVector<PrimeField>& v, const FieldMatrix<PrimeField>& m);

}  // namespace cova
