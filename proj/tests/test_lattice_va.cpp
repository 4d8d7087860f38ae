#include <gtest/gtest.h>

#include <random>

#include "cova/errors.hpp"
#include "cova/integral_form.hpp"
#include "cova/lattice_va.hpp"
#include "cova/lie_algebra.hpp"
#include "cova/real_form.hpp"
#include "cova/va_axioms.hpp"
#include "cova/va_morphism.hpp"

using namespace cova;

namespace {

LatticeVA va_of(const std::string& name, int wmax = 4) { return LatticeVA(build_root_lattice(name).gram(), wmax); }

VAElement mono(const FockMonomial& m) { return VAElement(m); }

mpz_class binom(long n, long k) {
  if (k < 0) return 0;
  mpz_class r = 1;
  for (long i = 0; i < k; ++i) r = r * (n - i);
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k));
  return r / f;
}

// Both sides of the Borcherds identity for a_q b, m, n acting on c.
std::pair<VAElement, VAElement> borcherds(const LatticeVA& V, const VAElement& a, const VAElement& b,
                                          const VAElement& c, long m, long n, long q) {
  const long wa = *V.weight(a), wb = *V.weight(b), wc = *V.weight(c);
  VAElement lhs, rhs;
  for (long i = 0; q + i <= wa + wb - 1; ++i) {
    VAElement ab = V.product(a, q + i, b);
    if (ab.is_zero()) continue;
    lhs += mpq_class(binom(m, i)) * V.product(ab, m + n - i, c);
  }
  const long top = std::max(wb + wc - 1 - n, wa + wc - 1 - m);
  for (long i = 0; i <= std::max<long>(top, 0); ++i) {
    mpq_class sgn_i = (i % 2 == 0) ? 1 : -1;
    mpq_class coef = sgn_i * mpq_class(binom(q, i));
    if (coef == 0) continue;
    VAElement t1 = V.product(a, q + m - i, V.product(b, n + i, c));
    VAElement t2 = V.product(b, q + n - i, V.product(a, m + i, c));
    mpq_class sq = (q % 2 == 0) ? 1 : -1;
    rhs += coef * (t1 - sq * t2);
  }
  return {lhs, rhs};
}

}  // namespace

TEST(Fock, E8GradedDimensions) {
  const Gram g = build_root_lattice("E8").gram();
  const std::vector<long> expect{1, 248, 4124};
  for (int n = 0; n <= 2; ++n) {
    EXPECT_EQ(graded_dimension(g, n), expect[n]);
    EXPECT_EQ(fock_basis(g, n).size(), static_cast<std::size_t>(expect[n]));
  }
}

TEST(Fock, CountsAgreeWithSeries) {
  for (const char* name : {"A1", "A2", "A3", "D4"})
    for (int n = 0; n <= 4; ++n) {
      const Gram g = build_root_lattice(name).gram();
      EXPECT_EQ(graded_dimension(g, n), fock_basis(g, n).size()) << name << " " << n;
    }
  EXPECT_EQ(graded_dimension(build_root_lattice("A1").gram(), 1), 3);
}

TEST(Fock, BasisIsOrderedAndDistinct) {
  auto b = fock_basis(build_root_lattice("A2").gram(), 3);
  for (std::size_t i = 0; i + 1 < b.size(); ++i) {
    EXPECT_FALSE(b[i] == b[i + 1]);
    EXPECT_LE(b[i].heis_degree(), b[i + 1].heis_degree());
  }
}

TEST(LatticeVA, TruncationIsEnforced) {
  LatticeVA V = va_of("A1", 2);
  EXPECT_THROW(V.basis(3), TruncationError);
  EXPECT_THROW(V.product(V.exp({1}), -3, V.exp({1})), TruncationError);
}

TEST(LatticeVA, VacuumAndCreationOnBases) {
  LatticeVA V = va_of("A2", 3);
  for (int w = 0; w <= 3; ++w)
    for (const auto& m : V.basis(w)) {
      VAElement a = mono(m);
      EXPECT_EQ(V.product(V.vacuum(), -1, a), a);
      for (long n : {-3L, -2L, 0L, 1L, 2L})
        if (w - n - 1 <= V.wmax()) EXPECT_TRUE(V.product(V.vacuum(), n, a).is_zero());
      EXPECT_EQ(V.product(a, -1, V.vacuum()), a);
      for (long n = 0; n <= 3; ++n) EXPECT_TRUE(V.product(a, n, V.vacuum()).is_zero());
    }
  EXPECT_TRUE(V.translation(V.vacuum()).is_zero());
}

TEST(LatticeVA, TranslationDerivative) {
  LatticeVA V = va_of("A2", 4);
  std::vector<VAElement> as;
  for (int w = 0; w <= 2; ++w)
    for (const auto& m : V.basis(w)) as.push_back(mono(m));
  std::vector<VAElement> bs;
  for (int w = 0; w <= 1; ++w)
    for (const auto& m : V.basis(w)) bs.push_back(mono(m));
  for (const auto& a : as) {
    VAElement ta = V.translation(a);
    for (const auto& b : bs)
      for (long n = -1; n <= 3; ++n) {
        if (*V.weight(a) + 1 + *V.weight(b) - n - 1 > V.wmax()) continue;
        EXPECT_EQ(V.product(ta, n, b), mpq_class(-n) * V.product(a, n - 1, b));
      }
  }
}

TEST(LatticeVA, ExponentialProducts) {
  LatticeVA V = va_of("A2");
  const LatVec a{1, 1};
  const int e = V.cocycle()(a, -a);
  EXPECT_EQ(V.product(V.exp(a), 0, V.exp(-a)), mpq_class(e) * V.heis(a));
  EXPECT_EQ(V.product(V.exp(a), 1, V.exp(-a)), mpq_class(e) * V.vacuum());
  EXPECT_TRUE(V.product(V.exp(a), 2, V.exp(-a)).is_zero());
  EXPECT_EQ(V.product(V.exp(a), -1, V.exp(-a)), mpq_class(e) * V.s_poly(a, 2));
}

TEST(LatticeVA, SchurPolynomials) {
  LatticeVA V = va_of("A1");
  const LatVec a{1};
  EXPECT_EQ(V.s_poly(a, 0), V.vacuum());
  EXPECT_EQ(V.s_poly(a, 1), V.heis(a));
  VAElement a1 = V.heis(a, 1);
  VAElement s2 = mpq_class(1, 2) * (V.heis_mode(a, -1, a1) + V.heis(a, 2));
  EXPECT_EQ(V.s_poly(a, 2), s2);
  const LatVec b{3};
  for (int n = 1; n <= 4; ++n) {
    VAElement rhs;
    for (int k = 1; k <= n; ++k) rhs += V.heis_mode(b, -k, V.s_poly(b, n - k));
    EXPECT_EQ(mpq_class(n) * V.s_poly(b, n), rhs);
  }
}

TEST(LatticeVA, WeightOneMatchesChevalleyBracket) {
  for (const char* name : {"A2", "D4", "E6"}) {
    RootLattice L = build_root_lattice(name);
    LatticeVA V(L.gram(), 2);
    LieAlgebra g(L, RingDescriptor::integers());
    auto to_va = [&](std::size_t i) {
      LatVec w = g.weight(i);
      if (i < g.rank()) return V.heis(L.simple_root(static_cast<int>(i)));
      return V.exp(w);
    };
    for (std::size_t i = 0; i < g.dim(); ++i)
      for (std::size_t j = 0; j < g.dim(); ++j) {
        VAElement expect;
        for (const auto& t : g.bracket_basis(i, j)) expect += mpq_class(t.coef) * to_va(t.index);
        EXPECT_EQ(V.product(to_va(i), 0, to_va(j)), expect) << name << " " << i << " " << j;
      }
  }
}

TEST(LatticeVA, BorcherdsOnRandomTriples) {
  std::mt19937_64 rng(11);
  for (const char* name : {"A1", "A2"}) {
    LatticeVA V = va_of(name, 6);
    std::vector<FockMonomial> pool;
    for (int w = 0; w <= 2; ++w)
      for (const auto& m : V.basis(w)) pool.push_back(m);
    int done = 0;
    for (int trial = 0; done < 40 && trial < 400; ++trial) {
      auto pick = [&] { return mono(pool[rng() % pool.size()]); };
      VAElement a = pick(), b = pick(), c = pick();
      long m = static_cast<long>(rng() % 7) - 3, n = static_cast<long>(rng() % 7) - 3, q = static_cast<long>(rng() % 7) - 3;
      try {
        auto [l, r] = borcherds(V, a, b, c, m, n, q);
        EXPECT_EQ(l, r) << name << " " << to_string(a) << " " << to_string(b) << " " << to_string(c) << " m=" << m
                        << " n=" << n << " q=" << q;
        ++done;
      } catch (const TruncationError&) {
      }
    }
    EXPECT_GE(done, 40);
  }
}

TEST(IntegralForm, LowWeights) {
  LatticeVA V = va_of("A2", 3);
  IntegralForm I(V);
  EXPECT_EQ(I.module(0).rank(), 1u);
  EXPECT_TRUE(I.contains(0, V.vacuum()));
  EXPECT_FALSE(I.contains(0, mpq_class(1, 2) * V.vacuum()));
  // weight 1: Z-span of a_i(-1) and e^a
  const WeightSpace& W = I.space(1);
  std::vector<SparseRow> rows;
  const RootLattice L = build_root_lattice("A2");
  for (int i = 0; i < 2; ++i) rows.push_back(W.to_row(V.heis(L.simple_root(i))));
  for (const auto& r : L.roots()) rows.push_back(W.to_row(V.exp(r)));
  EXPECT_TRUE(lattice_equal(I.module(1).basis, IntMatrix::from_rows(W.dim(), rows)));
  EXPECT_TRUE(I.contains(2, V.s_poly({1, 0}, 2)));
  EXPECT_TRUE(I.contains(3, V.s_poly({1, 2}, 3)));
  EXPECT_FALSE(I.contains(2, mpq_class(1, 2) * V.heis({1, 0}, 2)));
}

TEST(IntegralForm, FullRankInEachWeight) {
  for (const char* name : {"A1", "A2", "A3"}) {
    LatticeVA V = va_of(name, 3);
    IntegralForm I(V);
    for (int n = 0; n <= 3; ++n) EXPECT_EQ(I.module(n).rank(), I.space(n).dim()) << name << " " << n;
  }
}

TEST(IntegralForm, E8WeightTwoContainsVirasoro) {
  LatticeVA V = va_of("E8", 2);
  IntegralForm I(V);
  EXPECT_EQ(I.module(2).rank(), 4124u);
  EXPECT_TRUE(I.contains(2, V.virasoro()));
}

TEST(IntegralForm, MinimalVirasoroMultipleForA1) {
  LatticeVA V = va_of("A1", 2);
  IntegralForm I(V);
  int s = 1;
  while (!I.contains(2, mpq_class(s) * V.virasoro())) ++s;
  EXPECT_EQ(s, 4);
}

TEST(IntegralForm, ClosedUnderProductsRankTwo) {
  LatticeVA V = va_of("A2", 3);
  IntegralForm I(V);
  for (int wa = 0; wa <= 2; ++wa)
    for (int wb = 0; wb <= 2; ++wb)
      for (const auto& a : I.elements(wa))
        for (const auto& b : I.elements(wb))
          for (long n = -1; n <= wa + wb - 1; ++n) {
            const int w = wa + wb - static_cast<int>(n) - 1;
            if (w > 3) continue;
            EXPECT_TRUE(I.contains(w, V.product(a, n, b)))
                << wa << " " << wb << " " << n << "\n" << to_string(a) << "\n" << to_string(b) << "\n" << to_string(V.product(a, n, b));
          }
}

TEST(Morphisms, ThetaFormulaAndAutomorphism) {
  LatticeVA V = va_of("A2", 2);
  const LatVec a{1, 0};
  EXPECT_EQ(V.theta(V.heis(a)), mpq_class(-1) * V.heis(a));
  EXPECT_EQ(V.theta(V.exp(a)), V.exp(-a));
  VAMorphism th = theta_morphism(V);
  for (int n = 0; n <= 2; ++n)
    for (const auto& m : V.basis(n)) EXPECT_EQ(th(th(VAElement(m))), VAElement(m));
  EXPECT_FALSE(product_violation(V, th, 1).has_value());
  IntegralForm I(V);
  for (int n = 0; n <= 2; ++n) {
    IntMatrix t = lattice_matrix(I, n, th);
    EXPECT_EQ(abs(determinant(t)), 1);
  }
}

TEST(Morphisms, GammaLiftD4OrderThree) {
  RootLattice L = build_root_lattice("D4");
  GraphAut g = graph_automorphism(L, 3);
  CocycleTable ct = build_cocycle(L, g);
  ASSERT_TRUE(ct.correction.has_value());
  LatticeVA V(L.gram(), 2);
  GammaLift gl = gamma_lift(g, *ct.correction);
  VAMorphism gh = gamma_morphism(V, gl);
  for (int n = 0; n <= 2; ++n)
    for (const auto& m : V.basis(n)) EXPECT_EQ(gh(gh(gh(VAElement(m)))), VAElement(m));
  EXPECT_FALSE(product_violation(V, gh, 1).has_value());
  IntegralForm I(V);
  for (int n = 0; n <= 2; ++n) EXPECT_EQ(abs(determinant(lattice_matrix(I, n, gh))), 1);
  for (std::size_t i = 0; i < g.fixed_basis.rows(); ++i) {
    LatVec v(4, 0);
    for (const auto& [c, x] : g.fixed_basis.row(i)) v[c] = static_cast<int>(x.get_si());
    EXPECT_EQ(gh(V.heis(v)), V.heis(v));
  }
}

TEST(Morphisms, ChevalleyActionOnA2) {
  RootLattice L = build_root_lattice("A2");
  LatticeVA V(L.gram(), 2);
  IntegralForm I(V);
  LieAlgebra g(L, RingDescriptor::integers());
  for (std::size_t r = 0; r < L.roots().size(); ++r) {
    const LatVec& root = L.roots()[r];
    ChevalleyAction x = va_generator_action(I, root, 2);
    for (int n = 0; n <= 2; ++n) EXPECT_TRUE(x.at(n, 0) == IntMatrix::identity(I.module(n).rank()));
    ChevalleyGenerator lie = chevalley_generator(g, root);
    auto to_va = [&](std::size_t i) {
      if (i < g.rank()) return V.heis(L.simple_root(static_cast<int>(i)));
      return V.exp(g.weight(i));
    };
    for (long t : {1L, -2L, 3L})
      for (std::size_t j = 0; j < g.dim(); ++j) {
        VAElement expect;
        mpq_class tk = 1;
        for (const auto& d : lie.divided_powers) {
          for (std::size_t i = 0; i < g.dim(); ++i)
            if (sgn(d[i][j]) != 0) expect += tk * d[i][j] * to_va(i);
          tk *= t;
        }
        EXPECT_EQ(x.apply(V, to_va(j), t), expect);
      }
  }
}

TEST(Morphisms, ChevalleyActionPreservesProductsModP) {
  RootLattice L = build_root_lattice("A2");
  LatticeVA V(L.gram(), 2);
  IntegralForm I(V);
  ChevalleyAction x = va_generator_action(I, L.roots()[0], 2);
  std::mt19937_64 rng(5);
  for (std::uint32_t p : {2u, 3u}) {
    ReducedForm R(I, p);
    const PrimeField& f = R.field();
    for (int trial = 0; trial < 30; ++trial) {
      const int wa = static_cast<int>(rng() % 3), wb = static_cast<int>(rng() % 3);
      const long k = wa + wb - 1 - static_cast<long>(rng() % static_cast<unsigned long>(std::min(wa + wb, 2) + 1));
      const int w = wa + wb - static_cast<int>(k) - 1;
      auto rand_vec = [&](int n) {
        ReducedForm::Vec v(R.dim(n));
        for (auto& c : v) c = static_cast<std::uint32_t>(rng() % p);
        return v;
      };
      auto a = rand_vec(wa), b = rand_vec(wb);
      const std::uint32_t t = static_cast<std::uint32_t>(rng() % p);
      auto lhs = row_times(f, R.product(wa, a, k, wb, b), x.at(f, w, t));
      auto rhs = R.product(wa, row_times(f, a, x.at(f, wa, t)), k, wb, row_times(f, b, x.at(f, wb, t)));
      EXPECT_EQ(lhs, rhs) << p << " " << wa << " " << wb << " " << k;
    }
  }
}

TEST(Forms, NormalizationAndInvariance) {
  RootLattice L = build_root_lattice("A2");
  LatticeVA V(L.gram(), 3);
  EXPECT_EQ(V.form(V.vacuum(), V.vacuum()), 1);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      EXPECT_EQ(V.form(V.heis(L.simple_root(i)), V.heis(L.simple_root(j))), L.gram()[i][j]);
  // (a_m b, c) = -(b, a_{-m} c) for a of weight one
  std::vector<VAElement> ones;
  for (const auto& m : V.basis(1)) ones.push_back(VAElement(m));
  for (const auto& a : ones)
    for (int wb = 0; wb <= 2; ++wb)
      for (const auto& mb : V.basis(wb))
        for (long m = -1; m <= 2; ++m) {
          const int wc = wb - static_cast<int>(m);
          if (wc < 0 || wc > 3) continue;
          for (const auto& mc : V.basis(wc)) {
            VAElement b(mb), c(mc);
            EXPECT_EQ(V.invariant_form(V.product(a, m, b), c), -V.invariant_form(b, V.product(a, -m, c)));
          }
        }
}

TEST(Virasoro, GradingTranslationAndRelation) {
  LatticeVA V = va_of("A2", 4);
  for (int n = 0; n <= 2; ++n)
    for (const auto& m : V.basis(n)) EXPECT_EQ(V.virasoro_mode(0, VAElement(m)), mpq_class(n) * VAElement(m));
  EXPECT_TRUE(V.virasoro_mode(-1, V.vacuum()).is_zero());
  for (const auto& m : V.basis(1)) EXPECT_EQ(V.virasoro_mode(-1, VAElement(m)), V.translation(VAElement(m)));
  const mpq_class c = V.rank();
  for (long a = -1; a <= 2; ++a)
    for (long b = -1; b <= 2; ++b)
      for (int w = 0; w <= 1; ++w)
        for (const auto& m : V.basis(w)) {
          VAElement v(m);
          if (w - a > 4 || w - b > 4 || w - a - b > 4) continue;
          VAElement lhs = V.virasoro_mode(a, V.virasoro_mode(b, v)) - V.virasoro_mode(b, V.virasoro_mode(a, v));
          VAElement rhs = mpq_class(a - b) * V.virasoro_mode(a + b, v);
          if (a + b == 0) rhs += (c * (a * a * a - a) / 12) * v;
          EXPECT_EQ(lhs, rhs) << a << " " << b;
        }
}

TEST(RealForm, PositiveDefiniteGrams) {
  {
    LatticeVA V = va_of("A1", 2);
    for (int n = 1; n <= 2; ++n) {
      auto B = tilde_basis(V, n);
      EXPECT_EQ(B.size(), V.basis(n).size());
      EXPECT_TRUE(positive_definite(tilde_gram(V, B))) << n;
    }
  }
  LatticeVA V = va_of("E8", 1);
  auto B = tilde_basis(V, 1);
  EXPECT_EQ(B.size(), 248u);
  EXPECT_TRUE(positive_definite(tilde_gram(V, B)));
}

TEST(RealForm, HalfIntegralFormIsClosed) {
  LatticeVA V = va_of("A1", 2);
  IntegralForm I(V);
  std::vector<std::vector<ComplexElement>> B;
  for (int n = 0; n <= 2; ++n) {
    std::vector<ComplexElement> here;
    for (const auto& b : I.elements(n)) {
      ComplexElement x{b, {}};
      ComplexElement tx = conjugation_twist(V, x);
      here.push_back(x + tx);
      here.push_back(scale(x - tx, 0, 1));
    }
    for (const auto& e : here) EXPECT_TRUE(in_half_integral_real_form(I, n, e));
    B.push_back(here);
  }
  for (int wa = 0; wa <= 2; ++wa)
    for (int wb = 0; wb <= 2; ++wb)
      for (const auto& a : B[wa])
        for (const auto& b : B[wb])
          for (long k = wa + wb - 3; k <= wa + wb - 1; ++k)
            EXPECT_TRUE(in_half_integral_real_form(I, wa + wb - static_cast<int>(k) - 1, product(V, a, k, b)));
}

TEST(RealForm, CompactBracketTableE8) {
  RootLattice L = build_root_lattice("E8");
  LatticeVA V(L.gram(), 1);
  CompactTableReport r = compact_bracket_table(V, L);
  EXPECT_EQ(r.entries, 120u * 120u * 5u);
  EXPECT_EQ(r.corrected_mismatches, 0u) << r.corrected_witness;
  EXPECT_EQ(r.literal_mismatches, r.sign_mismatches + r.inner_one_mismatches);
}

TEST(SubVA, GeneratedByFixedWeightOne) {
  for (auto [name, order, rank] : {std::tuple{"D4", 3, 14u}, std::tuple{"E6", 2, 52u}}) {
    RootLattice L = build_root_lattice(name);
    GraphAut g = graph_automorphism(L, order);
    CocycleTable ct = build_cocycle(L, g);
    LatticeVA V(L.gram(), 2);
    IntegralForm I(V);
    GammaLift gl = gamma_lift(g, *ct.correction);
    IntMatrix fixed = fixed_lattice(I.module(1).basis, ambient_matrix(I.space(1), gl));
    EXPECT_EQ(fixed.rows(), rank);
    std::vector<VAElement> S;
    for (std::size_t i = 0; i < fixed.rows(); ++i) S.push_back(I.space(1).from_row(fixed.row(i)));
    auto gen = generated_subva(I, S, 1);
    EXPECT_EQ(gen[0].rank(), 1u);
    EXPECT_TRUE(lattice_equal(gen[1].basis, fixed));
  }
}

TEST(Virasoro, CheckReport) {
  LatticeVA V = va_of("A2", 4);
  for (long m = -2; m <= 2; ++m)
    for (long n = -2; n <= 2; ++n) {
      VirasoroReport r = virasoro_check(V, m, n, 2);
      EXPECT_TRUE(r.ok()) << m << " " << n << " " << r.witness;
      EXPECT_GT(r.checked, 0u);
    }
  LatticeVA E = va_of("E8", 2);
  VirasoroReport r = virasoro_check(E, 1, -1, 1);
  EXPECT_TRUE(r.ok());
}

TEST(Axioms, BorcherdsOverIntegersAndF3) {
  for (const char* name : {"A1", "A2", "A3", "D4"}) {
    LatticeVA V = va_of(name, 6);
    AxiomReport r = borcherds_check(V, 3, 130, 3);
    EXPECT_EQ(r.checked, 130u) << name;
    EXPECT_TRUE(r.ok()) << r.witness;
  }
  for (const char* name : {"A1", "A2"}) {
    LatticeVA V = va_of(name, 5);
    IntegralForm I(V);
    ReducedForm R(I, 3);
    AxiomReport r = borcherds_check(R, 4, 250, 3);
    EXPECT_EQ(r.checked, 250u) << name;
    EXPECT_TRUE(r.ok()) << r.witness;
  }
}

TEST(Axioms, VacuumCreationTranslation) {
  LatticeVA V = va_of("A2", 4);
  EXPECT_TRUE(vacuum_creation_check(V, 3).ok());
  AxiomReport t = translation_check(V, 2, 1);
  EXPECT_GT(t.checked, 0u);
  EXPECT_TRUE(t.ok()) << t.witness;
}
