#include "cova/lattice_va.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>

#include "cova/errors.hpp"

namespace cova {

namespace {

mpz_class binom(long n, long k) {
  if (k < 0) return 0;
  mpz_class r;
  if (n >= 0) {
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
  }
  // C(n, k) = (-1)^k C(k - n - 1, k)
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(k - n - 1), static_cast<unsigned long>(k));
  return (k % 2 == 0) ? r : mpz_class(-r);
}

int max_depth(const HeisMonomial& m) {
  int d = 0;
  for (HeisFactor f : m) d = std::max(d, factor_depth(f));
  return d;
}

std::vector<long> gram_times(const Gram& g, const LatVec& a) {
  std::vector<long> out(g.size(), 0);
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) out[i] += g[i][j] * a[j];
  return out;
}

}  // namespace

LatticeVA::LatticeVA(Gram g, int wmax) : gram_(std::move(g)), wmax_(wmax), eps_(gram_) {
  if (rank() > 15) throw std::invalid_argument("rank above 15 is not supported");
}

std::vector<FockMonomial> LatticeVA::basis(int n) const {
  if (n > wmax_) throw TruncationError("weight " + std::to_string(n) + " exceeds truncation " + std::to_string(wmax_));
  return fock_basis(gram_, n);
}

VAElement LatticeVA::vacuum() const { return VAElement(FockMonomial{{}, LatVec(rank(), 0)}); }

VAElement LatticeVA::exp(const LatVec& b) const { return VAElement(FockMonomial{{}, b}); }

VAElement LatticeVA::heis(const LatVec& a, int n) const {
  VAElement out;
  for (int i = 0; i < rank(); ++i)
    if (a[i] != 0) out.add(FockMonomial{{heis_factor(i, n)}, LatVec(rank(), 0)}, a[i]);
  return out;
}

const LatticeVA::HeisState& LatticeVA::schur(const LatVec& a, int k) const {
  auto key = std::make_pair(a, k);
  auto it = schur_cache_.find(key);
  if (it != schur_cache_.end()) return it->second;
  HeisState s;
  if (k == 0) {
    s[{}] = 1;
  } else {
    for (int j = 1; j <= k; ++j) {
      const HeisState& prev = schur(a, k - j);
      for (const auto& [m, c] : prev)
        for (int i = 0; i < rank(); ++i) {
          if (a[i] == 0) continue;
          HeisMonomial mm = heis_multiply(m, {heis_factor(i, j)});
          s[mm] += c * a[i];
        }
    }
    for (auto p = s.begin(); p != s.end();) {
      p->second /= k;
      if (sgn(p->second) == 0)
        p = s.erase(p);
      else
        ++p;
    }
  }
  return schur_cache_.emplace(key, std::move(s)).first->second;
}

VAElement LatticeVA::s_poly(const LatVec& a, int n) const {
  VAElement out;
  for (const auto& [m, c] : schur(a, n)) out.add(FockMonomial{m, LatVec(rank(), 0)}, c);
  return out;
}

// a(m) for m > 0 on a single monomial: contraction with each factor of depth m.
LatticeVA::HeisState LatticeVA::annihilate(const LatVec& a, int m, const HeisMonomial& f) const {
  HeisState out;
  std::vector<long> ga = gram_times(gram_, a);
  for (std::size_t p = 0; p < f.size(); ++p) {
    if (factor_depth(f[p]) != m) continue;
    long c = ga[factor_index(f[p])];
    if (c == 0) continue;
    HeisMonomial rest = f;
    rest.erase(rest.begin() + static_cast<long>(p));
    out[rest] += mpq_class(static_cast<long>(m) * c);
  }
  return out;
}

// sum_{m >= 0} C(-m-1, k) a_index(m), with a_index(0) acting on e^beta.
LatticeVA::HeisState LatticeVA::apply_annihilator(int index, int k, const LatVec& beta, const HeisState& s) const {
  LatVec unit(rank(), 0);
  unit[index] = 1;
  const long zero_mode = inner(gram_, unit, beta);
  HeisState out;
  for (const auto& [mono, c] : s) {
    if (zero_mode != 0) out[mono] += c * binom(-1, k) * zero_mode;
    const int top = max_depth(mono);
    for (int m = 1; m <= top; ++m) {
      mpz_class coef = binom(-m - 1, k);
      for (const auto& [r, d] : annihilate(unit, m, mono)) out[r] += c * d * coef;
    }
  }
  for (auto p = out.begin(); p != out.end();) {
    if (sgn(p->second) == 0)
      p = out.erase(p);
    else
      ++p;
  }
  return out;
}

VAElement LatticeVA::compute(const FockMonomial& u, long n, const FockMonomial& v) const {
  VAElement out;
  const long wu = weight(u), wv = weight(v);
  const long W = wu + wv - n - 1;
  if (W < 0) return out;
  if (W > wmax_)
    throw TruncationError("product weight " + std::to_string(W) + " exceeds truncation " + std::to_string(wmax_));
  const LatVec& al = u.beta;
  const LatVec& be = v.beta;
  const LatVec ga = al + be;
  const long D = W - inner(gram_, ga, ga) / 2;
  if (D < 0) return out;
  const int sign = eps_(al, be);
  const std::size_t k = u.factors.size();

  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    HeisState st;
    st[v.factors] = 1;
    std::vector<HeisFactor> creation;
    for (std::size_t j = 0; j < k && !st.empty(); ++j) {
      HeisFactor f = u.factors[j];
      if (mask & (std::size_t{1} << j))
        st = apply_annihilator(factor_index(f), factor_depth(f) - 1, be, st);
      else
        creation.push_back(f);
    }
    if (st.empty()) continue;

    // E^+(-al, z): Q_0 = 1, k Q_k = -sum_j al(j) Q_{k-j}
    HeisState after;
    for (const auto& [mono, c] : st) {
      std::vector<HeisState> q{HeisState{{mono, c}}};
      const int deg = heis_degree(mono);
      for (int kk = 1; kk <= deg; ++kk) {
        HeisState qk;
        for (int j = 1; j <= kk; ++j)
          for (const auto& [m2, c2] : q[kk - j])
            for (const auto& [r, d] : annihilate(al, j, m2)) qk[r] -= c2 * d;
        for (auto& [m2, c2] : qk) c2 /= kk;
        q.push_back(std::move(qk));
      }
      for (const auto& qk : q)
        for (const auto& [m2, c2] : qk) after[m2] += c2;
    }

    std::map<long, HeisState> creation_by_degree;
    auto creation_part = [&](long r) -> const HeisState& {
      auto it = creation_by_degree.find(r);
      if (it != creation_by_degree.end()) return it->second;
      HeisState res;
      for (long k2 = 0; k2 <= r; ++k2) {
        const HeisState& s = schur(al, static_cast<int>(k2));
        if (s.empty()) continue;
        // distribute r - k2 over the creation factors with p_j >= n_j
        HeisState dist;
        HeisMonomial cur;
        std::function<void(std::size_t, long, mpz_class)> rec = [&](std::size_t j, long left, mpz_class coef) {
          if (j == creation.size()) {
            if (left == 0) {
              HeisMonomial sorted = cur;
              std::sort(sorted.begin(), sorted.end());
              dist[sorted] += coef;
            }
            return;
          }
          const int nj = factor_depth(creation[j]);
          const int ij = factor_index(creation[j]);
          for (long p = nj; p <= left; ++p) {
            cur.push_back(heis_factor(ij, static_cast<int>(p)));
            rec(j + 1, left - p, coef * binom(p - 1, nj - 1));
            cur.pop_back();
          }
        };
        rec(0, r - k2, 1);
        for (const auto& [m1, c1] : s)
          for (const auto& [m2, c2] : dist) res[heis_multiply(m1, m2)] += c1 * c2;
      }
      return creation_by_degree.emplace(r, std::move(res)).first->second;
    };

    for (const auto& [mono, c] : after) {
      if (sgn(c) == 0) continue;
      const long r = D - heis_degree(mono);
      if (r < 0) continue;
      for (const auto& [m2, c2] : creation_part(r)) out.add(FockMonomial{heis_multiply(mono, m2), ga}, c * c2 * sign);
    }
  }
  return out;
}

VAElement LatticeVA::product(const FockMonomial& a, long n, const FockMonomial& b) const {
  if (weight(a) > wmax_ || weight(b) > wmax_) throw TruncationError("product input exceeds truncation");
  auto key = std::make_tuple(a, n, b);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  VAElement r = compute(a, n, b);
  cache_.emplace(std::move(key), r);
  return r;
}

VAElement LatticeVA::product(const VAElement& a, long n, const VAElement& b) const {
  VAElement out;
  for (const auto& [ma, ca] : a.terms)
    for (const auto& [mb, cb] : b.terms) {
      VAElement p = product(ma, n, mb);
      for (const auto& [m, c] : p.terms) out.add(m, c * ca * cb);
    }
  return out;
}

VAElement LatticeVA::heis_mode(const LatVec& a, long m, const VAElement& v) const {
  VAElement out;
  for (const auto& [mono, c] : v.terms) {
    if (m > 0) {
      for (const auto& [r, d] : annihilate(a, static_cast<int>(m), mono.factors)) out.add({r, mono.beta}, c * d);
    } else if (m == 0) {
      out.add(mono, c * inner(gram_, a, mono.beta));
    } else {
      for (int i = 0; i < rank(); ++i)
        if (a[i] != 0) out.add({heis_multiply(mono.factors, {heis_factor(i, static_cast<int>(-m))}), mono.beta}, c * a[i]);
    }
  }
  return out;
}

VAElement LatticeVA::translation(const VAElement& a) const { return product(a, -2, vacuum()); }

VAElement LatticeVA::virasoro() const {
  const int r = rank();
  std::vector<std::vector<mpq_class>> m(r, std::vector<mpq_class>(2 * r));
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) m[i][j] = gram_[i][j];
    m[i][r + i] = 1;
  }
  for (int c = 0; c < r; ++c) {
    int p = c;
    while (sgn(m[p][c]) == 0) ++p;
    std::swap(m[p], m[c]);
    mpq_class inv = 1 / m[c][c];
    for (auto& x : m[c]) x *= inv;
    for (int i = 0; i < r; ++i) {
      if (i == c || sgn(m[i][c]) == 0) continue;
      mpq_class f = m[i][c];
      for (int j = 0; j < 2 * r; ++j) m[i][j] -= f * m[c][j];
    }
  }
  VAElement out;
  const LatVec zero(r, 0);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      HeisMonomial f{heis_factor(i, 1), heis_factor(j, 1)};
      std::sort(f.begin(), f.end());
      out.add({f, zero}, m[i][r + j] / 2);
    }
  return out;
}

VAElement LatticeVA::virasoro_mode(long n, const VAElement& v) const { return product(virasoro(), n + 1, v); }

mpq_class LatticeVA::form(const FockMonomial& a, const FockMonomial& b) const {
  if (a.beta != b.beta || a.factors.size() != b.factors.size()) return 0;
  std::map<int, std::pair<std::vector<int>, std::vector<int>>> groups;
  for (HeisFactor f : a.factors) groups[factor_depth(f)].first.push_back(factor_index(f));
  for (HeisFactor f : b.factors) groups[factor_depth(f)].second.push_back(factor_index(f));
  mpq_class total = 1;
  for (const auto& [d, g] : groups) {
    const auto& [ia, ib] = g;
    if (ia.size() != ib.size()) return 0;
    // d^k * permanent of the Gram block
    std::vector<int> perm(ib.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
    mpz_class per = 0;
    do {
      mpz_class t = 1;
      for (std::size_t i = 0; i < ia.size() && t != 0; ++i) t *= gram_[ia[i]][ib[perm[i]]];
      per += t;
    } while (std::next_permutation(perm.begin(), perm.end()));
    mpz_class dk;
    mpz_ui_pow_ui(dk.get_mpz_t(), static_cast<unsigned long>(d), ia.size());
    total *= per * dk;
  }
  return total;
}

mpq_class LatticeVA::form(const VAElement& a, const VAElement& b) const {
  mpq_class s = 0;
  for (const auto& [ma, ca] : a.terms)
    for (const auto& [mb, cb] : b.terms) {
      if (ma.beta != mb.beta) continue;
      s += ca * cb * form(ma, mb);
    }
  return s;
}

mpq_class LatticeVA::invariant_form(const VAElement& a, const VAElement& b) const { return form(a, theta(b)); }

VAElement LatticeVA::theta(const VAElement& a) const {
  VAElement out;
  for (const auto& [m, c] : a.terms) out.add({m.factors, -m.beta}, (m.factors.size() % 2 == 0) ? c : mpq_class(-c));
  return out;
}

FockMonomial GammaLift::permute(const FockMonomial& m) const {
  FockMonomial r;
  r.factors.reserve(m.factors.size());
  for (HeisFactor f : m.factors) r.factors.push_back(heis_factor(gamma.perm[factor_index(f)], factor_depth(f)));
  std::sort(r.factors.begin(), r.factors.end());
  r.beta = gamma.apply(m.beta);
  return r;
}

VAElement GammaLift::operator()(const VAElement& a) const {
  VAElement out;
  for (const auto& [m, c] : a.terms) out.add(permute(m), correction.eta(m.beta) == 1 ? c : mpq_class(-c));
  return out;
}

GammaLift gamma_lift(const GraphAut& gamma, const CocycleCorrection& c) { return {gamma, c}; }

}  // namespace cova

namespace cova {

VirasoroReport virasoro_check(const LatticeVA& V, long m, long n, int wstates) {
  VirasoroReport rep;
  rep.m = m;
  rep.n = n;
  rep.grading = rep.derivative = true;
  const mpq_class c = V.rank();
  mpq_class central(m * m * m - m, 12);
  central.canonicalize();
  central = m + n == 0 ? c * central : mpq_class(0);
  for (int w = 0; w <= wstates; ++w)
    for (const auto& b : V.basis(w)) {
      const VAElement v(b);
      if (!(V.virasoro_mode(0, v) == mpq_class(w) * v)) rep.grading = false;
      if (w < V.wmax() && !(V.virasoro_mode(-1, v) == V.translation(v))) rep.derivative = false;
      try {
        VAElement lhs = V.virasoro_mode(m, V.virasoro_mode(n, v)) - V.virasoro_mode(n, V.virasoro_mode(m, v));
        VAElement rhs = mpq_class(m - n) * V.virasoro_mode(m + n, v) + central * v;
        ++rep.checked;
        if (!(lhs == rhs)) {
          ++rep.failures;
          if (rep.witness.empty()) rep.witness = to_string(b);
        }
      } catch (const TruncationError&) {
        ++rep.skipped;
      }
    }
  return rep;
}

}  // namespace cova
