#include "cova/fock.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace cova {

int heis_degree(const HeisMonomial& m) {
  int d = 0;
  for (HeisFactor f : m) d += factor_depth(f);
  return d;
}

HeisMonomial heis_multiply(const HeisMonomial& a, const HeisMonomial& b) {
  HeisMonomial out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

int weight(const Gram& g, const FockMonomial& m) {
  long nv = m.beta.empty() ? 0 : inner(g, m.beta, m.beta);
  return m.heis_degree() + static_cast<int>(nv / 2);
}

std::string to_string(const FockMonomial& m) {
  std::ostringstream os;
  for (HeisFactor f : m.factors) os << "a" << factor_index(f) + 1 << "(-" << factor_depth(f) << ")";
  if (!m.factors.empty()) os << "*";
  os << "e^" << to_string(m.beta);
  return os.str();
}

void VAElement::add(const FockMonomial& m, const mpq_class& c) {
  if (sgn(c) == 0) return;
  auto [it, fresh] = terms.emplace(m, c);
  if (fresh) return;
  it->second += c;
  if (sgn(it->second) == 0) terms.erase(it);
}

mpq_class VAElement::coefficient(const FockMonomial& m) const {
  auto it = terms.find(m);
  return it == terms.end() ? mpq_class(0) : it->second;
}

VAElement& VAElement::operator+=(const VAElement& o) {
  for (const auto& [m, c] : o.terms) add(m, c);
  return *this;
}

VAElement& VAElement::operator-=(const VAElement& o) {
  for (const auto& [m, c] : o.terms) add(m, -c);
  return *this;
}

VAElement& VAElement::operator*=(const mpq_class& c) {
  if (sgn(c) == 0) {
    terms.clear();
    return *this;
  }
  for (auto& [m, v] : terms) v *= c;
  return *this;
}

std::optional<int> weight(const Gram& g, const VAElement& a) {
  std::optional<int> w;
  for (const auto& [m, c] : a.terms) {
    int wm = weight(g, m);
    if (w && *w != wm) return std::nullopt;
    w = wm;
  }
  return w;
}

std::string to_string(const VAElement& a) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : a.terms) {
    if (!first) os << " + ";
    first = false;
    os << c.get_str() << "*" << to_string(m);
  }
  return os.str();
}

std::vector<HeisMonomial> heisenberg_monomials(int rank, int degree) {
  std::vector<HeisMonomial> out;
  HeisMonomial cur;
  std::function<void(int, HeisFactor)> rec = [&](int left, HeisFactor min_code) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (int d = 1; d <= left; ++d)
      for (int i = 0; i < rank; ++i) {
        HeisFactor f = heis_factor(i, d);
        if (f < min_code) continue;
        cur.push_back(f);
        rec(left - d, f);
        cur.pop_back();
      }
  };
  rec(degree, 0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<FockMonomial> fock_basis(const Gram& g, int n) {
  if (n < 0) return {};
  const int r = static_cast<int>(g.size());
  std::vector<LatVec> pts = vectors_up_to_norm(g, 2L * n);
  std::sort(pts.begin(), pts.end());
  std::vector<FockMonomial> out;
  for (int d = 0; d <= n; ++d) {
    const long target = 2L * (n - d);
    for (const auto& h : heisenberg_monomials(r, d))
      for (const auto& v : pts)
        if (inner(g, v, v) == target) out.push_back({h, v});
  }
  return out;
}

mpz_class graded_dimension(const Gram& g, int n) {
  if (n < 0) return 0;
  if (n > 12) throw std::invalid_argument("graded_dimension supports n <= 12");
  const long r = static_cast<long>(g.size());
  // prod_k (1 - q^k)^{-r}, one factor 1/(1-q^k) at a time
  std::vector<mpz_class> p(n + 1, 0);
  p[0] = 1;
  for (int k = 1; k <= n; ++k)
    for (long c = 0; c < r; ++c)
      for (int j = k; j <= n; ++j) p[j] += p[j - k];
  std::vector<long> theta = theta_coefficients(g, n);
  mpz_class total = 0;
  for (int k = 0; k <= n; ++k) total += mpz_class(theta[k]) * p[n - k];
  return total;
}

}  // namespace cova
