#include "cova/va_morphism.hpp"

#include <stdexcept>

#include "cova/errors.hpp"

namespace cova {

std::string to_string(MorphismKind k) {
  switch (k) {
    case MorphismKind::GammaLift: return "gamma_lift";
    case MorphismKind::Theta: return "theta";
    case MorphismKind::ChevalleyGenerator: return "chevalley_generator";
    case MorphismKind::Norm: return "norm";
    case MorphismKind::ConjugationTwist: return "conjugation_twist";
  }
  return "unknown";
}

VAElement VAMorphism::operator()(const VAElement& a) const {
  VAElement out;
  for (const auto& [m, c] : a.terms) {
    auto it = image.find(m);
    if (it == image.end()) throw TruncationError("morphism " + label + " is not tabulated on " + to_string(m));
    for (const auto& [m2, c2] : it->second.terms) out.add(m2, c * c2);
  }
  return out;
}

VAMorphism tabulate(const LatticeVA& V, MorphismKind kind, std::string label, const VAMap& f) {
  VAMorphism out{kind, std::move(label), {}};
  for (int n = 0; n <= V.wmax(); ++n)
    for (const auto& m : V.basis(n)) {
      VAElement img = f(VAElement(m));
      auto w = V.weight(img);
      if (!img.is_zero() && (!w || *w != n)) throw TheoremViolation(out.label + " is not weight preserving");
      out.image.emplace(m, std::move(img));
    }
  return out;
}

VAMorphism theta_morphism(const LatticeVA& V) {
  return tabulate(V, MorphismKind::Theta, "theta", [&](const VAElement& a) { return V.theta(a); });
}

VAMorphism gamma_morphism(const LatticeVA& V, const GammaLift& g) {
  return tabulate(V, MorphismKind::GammaLift, "gamma_hat", [&](const VAElement& a) { return g(a); });
}

IntMatrix lattice_matrix(const IntegralForm& I, int n, const VAMap& f) {
  const GradedZModule& M = I.module(n);
  IntMatrix out = IntMatrix::from_rows(M.rank(), {});
  for (std::size_t i = 0; i < M.rank(); ++i) {
    auto c = I.coordinates(n, f(I.element(n, i)));
    if (!c) throw IntegralityError("map leaves the integral form at weight " + std::to_string(n));
    SparseRow r;
    for (std::size_t j = 0; j < c->size(); ++j)
      if (sgn((*c)[j]) != 0) r.emplace_back(j, (*c)[j]);
    out.append_row(std::move(r));
  }
  return out;
}

std::optional<ProductWitness> product_violation(const LatticeVA& V, const VAMap& f, int w_in) {
  for (int wa = 0; wa <= w_in; ++wa)
    for (int wb = 0; wb <= w_in; ++wb) {
      const auto A = V.basis(wa);
      const auto B = V.basis(wb);
      for (const auto& a : A) {
        const VAElement fa = f(VAElement(a));
        for (const auto& b : B) {
          const VAElement fb = f(VAElement(b));
          for (long k = wa + wb - 1 - V.wmax(); k <= wa + wb - 1; ++k) {
            VAElement lhs = f(V.product(a, k, b));
            VAElement rhs = V.product(fa, k, fb);
            if (!(lhs == rhs)) return ProductWitness{a, b, k};
          }
        }
      }
    }
  return std::nullopt;
}

IntMatrix ChevalleyAction::at(int n, const mpz_class& t) const {
  const auto& dp = divided_powers.at(n);
  IntMatrix out = dp.front();
  mpz_class tk = 1;
  for (std::size_t k = 1; k < dp.size(); ++k) {
    tk *= t;
    IntMatrix term = dp[k];
    std::vector<SparseRow> rows;
    for (const auto& r : term.row_list()) {
      SparseRow s = r;
      for (auto& [c, v] : s) v *= tk;
      if (sgn(tk) == 0) s.clear();
      rows.push_back(std::move(s));
    }
    out = out + IntMatrix::from_rows(term.cols(), std::move(rows));
  }
  return out;
}

FieldMatrix<PrimeField> ChevalleyAction::at(const PrimeField& f, int n, std::uint32_t t) const {
  const auto& dp = divided_powers.at(n);
  const std::size_t d = dp.front().rows();
  FieldMatrix<PrimeField> out(f, d, d);
  std::uint32_t tk = 1;
  for (const auto& m : dp) {
    for (std::size_t i = 0; i < d; ++i)
      for (const auto& [j, v] : m.row(i)) out(i, j) = f.add(out(i, j), f.mul(tk, f.from_rational(mpq_class(v))));
    tk = f.mul(tk, f.from_long(t));
  }
  return out;
}

VAElement ChevalleyAction::apply(const LatticeVA& V, const VAElement& a, const mpq_class& t) const {
  VAElement out = a, cur = a;
  const VAElement e = V.exp(root);
  mpq_class tk = 1;
  for (int k = 1; !cur.is_zero(); ++k) {
    cur = V.product(e, 0, cur);
    cur *= mpq_class(1, k);
    tk *= t;
    out += tk * cur;
  }
  return out;
}

ChevalleyAction va_generator_action(const IntegralForm& I, const LatVec& root, int wmax) {
  const LatticeVA& V = I.va();
  ChevalleyAction out{root, {}};
  const VAElement e = V.exp(root);
  for (int n = 0; n <= wmax; ++n) {
    std::vector<VAElement> cur = I.elements(n);
    const std::size_t d = cur.size();
    std::vector<IntMatrix> dp{IntMatrix::identity(d)};
    for (int k = 1;; ++k) {
      bool all_zero = true;
      IntMatrix m = IntMatrix::from_rows(d, {});
      for (auto& x : cur) {
        x = V.product(e, 0, x);
        x *= mpq_class(1, k);
        auto c = I.coordinates(n, x);
        if (!c)
          throw IntegralityError("divided power " + std::to_string(k) + " of (e^" + to_string(root) +
                                 ")_0 leaves the integral form at weight " + std::to_string(n));
        SparseRow r;
        for (std::size_t j = 0; j < d; ++j)
          if (sgn((*c)[j]) != 0) r.emplace_back(j, (*c)[j]);
        if (!r.empty()) all_zero = false;
        m.append_row(std::move(r));
      }
      if (all_zero) break;
      dp.push_back(std::move(m));
    }
    out.divided_powers.emplace(n, std::move(dp));
  }
  return out;
}

ReducedForm::Vec ReducedForm::reduce(const std::vector<mpz_class>& coords) const {
  Vec v(coords.size(), 0);
  for (std::size_t i = 0; i < coords.size(); ++i) v[i] = f_.from_rational(mpq_class(coords[i]));
  return v;
}

ReducedForm::Vec ReducedForm::reduce(int n, const VAElement& a) const {
  auto c = I_.coordinates(n, a);
  if (!c) throw IntegralityError("element outside the integral form at weight " + std::to_string(n));
  return reduce(*c);
}

FieldMatrix<PrimeField> ReducedForm::reduce(const IntMatrix& m) const {
  FieldMatrix<PrimeField> out(f_, m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (const auto& [j, v] : m.row(i)) out(i, j) = f_.from_rational(mpq_class(v));
  return out;
}

const std::vector<mpz_class>& ReducedForm::structure(int wa, std::size_t i, long k, int wb, std::size_t j) const {
  auto key = std::make_tuple(wa, i, k, wb, j);
  auto it = table_.find(key);
  if (it != table_.end()) return it->second;
  const long w = wa + wb - k - 1;
  std::vector<mpz_class> c;
  if (w >= 0) {
    VAElement p = I_.va().product(I_.element(wa, i), k, I_.element(wb, j));
    auto co = I_.coordinates(static_cast<int>(w), p);
    if (!co) throw TheoremViolation("integral form is not closed under the product");
    c = std::move(*co);
  }
  return table_.emplace(key, std::move(c)).first->second;
}

ReducedForm::Vec ReducedForm::product(int wa, const Vec& a, long k, int wb, const Vec& b) const {
  const long w = wa + wb - k - 1;
  if (w < 0) return {};
  Vec out(dim(static_cast<int>(w)), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      const auto& s = structure(wa, i, k, wb, j);
      const auto ab = f_.mul(a[i], b[j]);
      for (std::size_t t = 0; t < s.size(); ++t)
        if (sgn(s[t]) != 0) out[t] = f_.add(out[t], f_.mul(ab, f_.from_rational(mpq_class(s[t]))));
    }
  }
  return out;
}

FieldVector<PrimeField> row_times(const PrimeField& f, const FieldVector<PrimeField>& v, const FieldMatrix<PrimeField>& m) {
  FieldVector<PrimeField> out(m.cols(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) out[j] = f.add(out[j], f.mul(v[i], m(i, j)));
  }
  return out;
}

}  // namespace cova
