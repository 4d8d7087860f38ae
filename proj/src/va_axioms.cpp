#include "cova/va_axioms.hpp"

#include <random>

#include "cova/errors.hpp"

namespace cova {

namespace {

mpz_class binom(long n, long k) {
  if (k < 0) return 0;
  mpz_class r = 1;
  for (long i = 0; i < k; ++i) r *= n - i;
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k));
  return r / f;
}

struct OverQ {
  using Elem = VAElement;
  const LatticeVA& V;

  std::vector<std::pair<int, Elem>> pool(int w) const {
    std::vector<std::pair<int, Elem>> out;
    for (int n = 0; n <= w; ++n)
      for (const auto& m : V.basis(n)) out.emplace_back(n, Elem(m));
    return out;
  }
  Elem zero(int) const { return {}; }
  Elem prod(int, const Elem& a, long k, int, const Elem& b) const { return V.product(a, k, b); }
  void axpy(Elem& acc, const mpz_class& c, const Elem& x) const {
    if (c != 0 && !x.is_zero()) acc += mpq_class(c) * x;
  }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }
  std::string label(const Elem& a) const { return to_string(a); }
};

struct OverFp {
  using Elem = FieldVector<PrimeField>;
  const ReducedForm& R;

  std::vector<std::pair<int, Elem>> pool(int w) const {
    std::vector<std::pair<int, Elem>> out;
    for (int n = 0; n <= w; ++n)
      for (std::size_t i = 0; i < R.dim(n); ++i) {
        Elem e(R.dim(n), 0);
        e[i] = 1;
        out.emplace_back(n, std::move(e));
      }
    return out;
  }
  Elem zero(int w) const { return w < 0 ? Elem{} : Elem(R.dim(w), 0); }
  Elem prod(int wa, const Elem& a, long k, int wb, const Elem& b) const { return R.product(wa, a, k, wb, b); }
  void axpy(Elem& acc, const mpz_class& c, const Elem& x) const {
    const auto& f = R.field();
    const auto cc = f.from_rational(mpq_class(c));
    if (cc == 0) return;
    for (std::size_t t = 0; t < x.size(); ++t) acc[t] = f.add(acc[t], f.mul(cc, x[t]));
  }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }
  std::string label(const Elem& a) const {
    std::string s = "[";
    for (std::size_t t = 0; t < a.size(); ++t)
      if (a[t]) s += (s.size() > 1 ? " " : "") + std::to_string(t) + ":" + std::to_string(a[t]);
    return s + "]";
  }
};

template <class A>
AxiomReport borcherds(const A& alg, std::uint64_t seed, std::size_t triples, int wbasis, long range) {
  using E = typename A::Elem;
  AxiomReport rep;
  std::mt19937_64 rng(seed);
  const auto pool = alg.pool(wbasis);
  const auto span = static_cast<unsigned long>(2 * range + 1);
  for (std::size_t draw = 0; rep.checked < triples && draw < 50 * triples; ++draw) {
    const auto& [wa, a] = pool[rng() % pool.size()];
    const auto& [wb, b] = pool[rng() % pool.size()];
    const auto& [wc, c] = pool[rng() % pool.size()];
    const long m = static_cast<long>(rng() % span) - range;
    const long n = static_cast<long>(rng() % span) - range;
    const long q = static_cast<long>(rng() % span) - range;
    const long W = wa + wb + wc - m - n - q - 2;
    if (W < 0) continue;
    try {
      E lhs = alg.zero(static_cast<int>(W)), rhs = alg.zero(static_cast<int>(W));
      for (long i = 0; wa + wb - q - i - 1 >= 0; ++i) {
        const mpz_class k = binom(m, i);
        if (k == 0) continue;
        const int wab = static_cast<int>(wa + wb - q - i - 1);
        alg.axpy(lhs, k, alg.prod(wab, alg.prod(wa, a, q + i, wb, b), m + n - i, wc, c));
      }
      const long top = std::max(wb + wc - 1 - n, wa + wc - 1 - m);
      for (long i = 0; i <= top; ++i) {
        const mpz_class k = (i % 2 == 0 ? 1 : -1) * binom(q, i);
        if (k == 0) continue;
        if (wb + wc - n - i - 1 >= 0) {
          const int wbc = static_cast<int>(wb + wc - n - i - 1);
          alg.axpy(rhs, k, alg.prod(wa, a, q + m - i, wbc, alg.prod(wb, b, n + i, wc, c)));
        }
        if (wa + wc - m - i - 1 >= 0) {
          const int wac = static_cast<int>(wa + wc - m - i - 1);
          alg.axpy(rhs, (q % 2 == 0 ? -1 : 1) * k, alg.prod(wb, b, q + n - i, wac, alg.prod(wa, a, m + i, wc, c)));
        }
      }
      ++rep.checked;
      if (!alg.equal(lhs, rhs)) {
        ++rep.failures;
        if (rep.witness.empty())
          rep.witness = "a=" + alg.label(a) + " b=" + alg.label(b) + " c=" + alg.label(c) + " m=" + std::to_string(m) +
                        " n=" + std::to_string(n) + " q=" + std::to_string(q);
      }
    } catch (const TruncationError&) {
      ++rep.rejected;
    }
  }
  return rep;
}

void record(AxiomReport& rep, bool ok, const std::string& what) {
  ++rep.checked;
  if (ok) return;
  ++rep.failures;
  if (rep.witness.empty()) rep.witness = what;
}

}  // namespace

AxiomReport borcherds_check(const LatticeVA& V, std::uint64_t seed, std::size_t triples, int wbasis, long range) {
  return borcherds(OverQ{V}, seed, triples, wbasis, range);
}

AxiomReport borcherds_check(const ReducedForm& R, std::uint64_t seed, std::size_t triples, int wbasis, long range) {
  return borcherds(OverFp{R}, seed, triples, wbasis, range);
}

AxiomReport vacuum_creation_check(const LatticeVA& V, int w) {
  AxiomReport rep;
  const VAElement one = V.vacuum();
  for (int n = 0; n <= w; ++n)
    for (const auto& m : V.basis(n)) {
      const VAElement a(m);
      const std::string s = to_string(m);
      record(rep, V.product(one, -1, a) == a, "vacuum_{-1} " + s);
      for (long k = -3; k <= 3; ++k)
        if (k != -1 && n - k - 1 <= V.wmax()) record(rep, V.product(one, k, a).is_zero(), "vacuum_k " + s);
      record(rep, V.product(a, -1, one) == a, s + "_{-1} vacuum");
      for (long k = 0; k <= n + 1; ++k) record(rep, V.product(a, k, one).is_zero(), s + "_k vacuum");
    }
  record(rep, V.translation(one).is_zero(), "D vacuum");
  return rep;
}

AxiomReport translation_check(const LatticeVA& V, int wa, int wb) {
  AxiomReport rep;
  for (int x = 0; x <= wa; ++x)
    for (const auto& ma : V.basis(x)) {
      const VAElement a(ma);
      const VAElement da = V.translation(a);
      for (int y = 0; y <= wb; ++y)
        for (const auto& mb : V.basis(y)) {
          const VAElement b(mb);
          for (long n = -1; n <= 3; ++n) {
            if (x + 1 + y - n - 1 > V.wmax()) {
              ++rep.rejected;
              continue;
            }
            record(rep, V.product(da, n, b) == mpq_class(-n) * V.product(a, n - 1, b),
                   "D(" + to_string(ma) + ")_" + std::to_string(n) + " " + to_string(mb));
          }
        }
    }
  return rep;
}

}  // namespace cova
