#include "cova/real_form.hpp"

#include <sstream>

#include "cova/errors.hpp"

namespace cova {

ComplexElement operator+(const ComplexElement& a, const ComplexElement& b) { return {a.re + b.re, a.im + b.im}; }
ComplexElement operator-(const ComplexElement& a, const ComplexElement& b) { return {a.re - b.re, a.im - b.im}; }

ComplexElement scale(const ComplexElement& a, const mpq_class& re, const mpq_class& im) {
  return {re * a.re - im * a.im, re * a.im + im * a.re};
}

ComplexElement product(const LatticeVA& V, const ComplexElement& a, long n, const ComplexElement& b) {
  return {V.product(a.re, n, b.re) - V.product(a.im, n, b.im), V.product(a.re, n, b.im) + V.product(a.im, n, b.re)};
}

ComplexElement conjugation_twist(const LatticeVA& V, const ComplexElement& a) {
  return {V.theta(a.re), mpq_class(-1) * V.theta(a.im)};
}

namespace {

bool lex_positive(const LatVec& v) {
  for (int x : v)
    if (x != 0) return x > 0;
  return false;
}

}  // namespace

std::vector<ComplexElement> tilde_basis(const LatticeVA& V, int n) {
  std::vector<ComplexElement> out;
  for (const auto& m : V.basis(n)) {
    VAElement x(m);
    if (is_zero(m.beta)) {
      if (m.factors.size() % 2 == 0)
        out.push_back({x, {}});
      else
        out.push_back({{}, x});
    } else if (lex_positive(m.beta)) {
      VAElement tx = V.theta(x);
      out.push_back({x + tx, {}});
      out.push_back({{}, x - tx});
    }
  }
  return out;
}

mpq_class tilde_form(const LatticeVA& V, const ComplexElement& a, const ComplexElement& b) {
  const VAElement tr = V.theta(b.re), ti = V.theta(b.im);
  mpq_class re = V.form(a.re, tr) - V.form(a.im, ti);
  mpq_class im = V.form(a.re, ti) + V.form(a.im, tr);
  if (sgn(im) != 0) throw TheoremViolation("invariant form is not real on the real form");
  return re;
}

std::vector<std::vector<mpq_class>> tilde_gram(const LatticeVA& V, const std::vector<ComplexElement>& basis) {
  const std::size_t n = basis.size();
  std::vector<std::vector<mpq_class>> g(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) g[i][j] = g[j][i] = tilde_form(V, basis[i], basis[j]);
  return g;
}

namespace {

mpq_class determinant(std::vector<std::vector<mpq_class>> a) {
  const std::size_t n = a.size();
  mpq_class det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(a[p][c]) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(a[i][c]) == 0) continue;
      mpq_class f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return det;
}

}  // namespace

std::vector<mpq_class> leading_principal_minors(const std::vector<std::vector<mpq_class>>& m) {
  const std::size_t n = m.size();
  std::vector<mpq_class> out;
  auto a = m;
  mpq_class acc = 1;
  for (std::size_t c = 0; c < n; ++c) {
    if (sgn(a[c][c]) == 0) {
      for (std::size_t k = c + 1; k <= n; ++k) {
        std::vector<std::vector<mpq_class>> sub(k, std::vector<mpq_class>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub[i][j] = m[i][j];
        out.push_back(determinant(sub));
      }
      return out;
    }
    acc *= a[c][c];
    out.push_back(acc);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(a[i][c]) == 0) continue;
      mpq_class f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return out;
}

bool positive_definite(const std::vector<std::vector<mpq_class>>& m) {
  for (const auto& d : leading_principal_minors(m))
    if (sgn(d) <= 0) return false;
  return true;
}

bool in_half_integral_real_form(const IntegralForm& I, int n, const ComplexElement& a) {
  if (!(conjugation_twist(I.va(), a) == a)) return false;
  auto half_integral = [&](const VAElement& x) {
    mpq_class s = 1;
    for (int k = 0; k <= 32; ++k, s *= 2)
      if (I.contains(n, s * x)) return true;
    return false;
  };
  return half_integral(a.re) && half_integral(a.im);
}

CompactTableReport compact_bracket_table(const LatticeVA& V, const RootLattice& L) {
  CompactTableReport rep;
  const Cocycle& eps = V.cocycle();
  auto H = [&](const LatVec& a) { return ComplexElement{{}, V.heis(a)}; };
  auto Xp = [&](const LatVec& a) { return ComplexElement{V.exp(a) + V.exp(-a), {}}; };
  auto Xm = [&](const LatVec& a) { return ComplexElement{{}, V.exp(a) - V.exp(-a)}; };
  auto describe = [&](const std::string& what, const LatVec& a, const LatVec& b) {
    std::ostringstream os;
    os << what << " a=" << to_string(a) << " b=" << to_string(b) << " (a,b)=" << L.inner(a, b);
    return os.str();
  };
  const std::size_t np = L.num_positive();
  for (std::size_t i = 0; i < np; ++i)
    for (std::size_t j = 0; j < np; ++j) {
      const LatVec& a = L.roots()[i];
      const LatVec& b = L.roots()[j];
      const long ab = L.inner(a, b);
      const mpq_class e = eps(a, b);
      struct Entry {
        std::string name;
        ComplexElement actual, literal, corrected;
        bool sign_family;
      };
      const ComplexElement zero;
      std::vector<Entry> entries;
      entries.push_back({"[H_a,X+_b]", product(V, H(a), 0, Xp(b)), scale(Xm(b), ab), scale(Xm(b), ab), false});
      entries.push_back({"[H_a,X-_b]", product(V, H(a), 0, Xm(b)), scale(Xp(b), ab), scale(Xp(b), -ab), true});
      ComplexElement pp = zero, mm = zero, pm = zero;
      ComplexElement pp_c = zero, mm_c = zero, pm_c = zero;
      if (ab == -1) {
        pp = pp_c = scale(Xp(a + b), e);
        mm = mm_c = scale(Xp(a + b), -e);
        pm = pm_c = scale(Xm(a + b), e);
      } else if (ab == 2) {
        pm = pm_c = scale(H(a), 2);
      } else if (ab == 1) {
        pp_c = scale(Xp(a - b), e);
        mm_c = scale(Xp(a - b), e);
        pm_c = scale(Xm(a - b), -e);
      }
      entries.push_back({"[X+_a,X+_b]", product(V, Xp(a), 0, Xp(b)), pp, pp_c, false});
      entries.push_back({"[X-_a,X-_b]", product(V, Xm(a), 0, Xm(b)), mm, mm_c, false});
      entries.push_back({"[X+_a,X-_b]", product(V, Xp(a), 0, Xm(b)), pm, pm_c, false});
      for (const auto& en : entries) {
        ++rep.entries;
        if (!(en.actual == en.literal)) {
          ++rep.literal_mismatches;
          if (en.sign_family)
            ++rep.sign_mismatches;
          else if (ab == 1)
            ++rep.inner_one_mismatches;
          if (rep.literal_witness.empty()) rep.literal_witness = describe(en.name, a, b);
        }
        if (!(en.actual == en.corrected)) {
          ++rep.corrected_mismatches;
          if (rep.corrected_witness.empty()) rep.corrected_witness = describe(en.name, a, b);
        }
      }
    }
  return rep;
}

}  // namespace cova
