#include <gtest/gtest.h>

#include <random>

#include "cova/lie_algebra.hpp"
#include "cova/reduced_lie.hpp"

using namespace cova;

namespace {

LieAlgebra algebra(const std::string& name, RingDescriptor R) { return LieAlgebra(build_root_lattice(name), R); }

std::vector<Scalar> scale(const std::vector<Scalar>& v, const Scalar& c) {
  std::vector<Scalar> out;
  for (const auto& x : v) out.push_back(x * c);
  return out;
}

std::vector<Scalar> add(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  std::vector<Scalar> out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] + b[i]);
  return out;
}

bool is_zero_vec(const FieldVector<PrimeField>& v) {
  for (auto x : v)
    if (x) return false;
  return true;
}

}  // namespace

TEST(Chevalley, Dimensions) {
  EXPECT_EQ(algebra("E8", RingDescriptor::prime_field(3)).dim(), 248u);
  EXPECT_EQ(algebra("A1", RingDescriptor::prime_field(2)).dim(), 3u);
  EXPECT_EQ(algebra("D4", RingDescriptor::prime_field(3)).dim(), 28u);
}

TEST(Chevalley, StructureConstantsAreSigns) {
  for (const auto& name : {"A3", "D4", "E6"}) {
    auto g = algebra(name, RingDescriptor::integers());
    const auto& L = g.lattice();
    for (std::size_t a = 0; a < L.roots().size(); ++a)
      for (std::size_t b = 0; b < L.roots().size(); ++b) {
        const auto& row = g.bracket_basis(g.e_index(a), g.e_index(b));
        const LatVec s = L.roots()[a] + L.roots()[b];
        if (is_zero(s)) {
          // [e_a, e_-a] = eps(a,-a) h_a
          const int sign = g.cocycle()(L.roots()[a], L.roots()[b]);
          ASSERT_EQ(row.size(), static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](int) { return true; })) -
                                    std::count(L.roots()[a].begin(), L.roots()[a].end(), 0));
          for (const auto& t : row) EXPECT_EQ(t.coef, sign * L.roots()[a][t.index]);
        } else if (L.inner(L.roots()[a], L.roots()[b]) >= 0) {
          EXPECT_TRUE(row.empty());
        } else {
          ASSERT_EQ(row.size(), 1u);
          EXPECT_EQ(std::abs(row[0].coef), 1);
          EXPECT_EQ(g.weight(row[0].index), s);
        }
      }
  }
}

TEST(Chevalley, JacobiExhaustiveSmallRank) {
  for (const auto& name : {"A1", "A2", "A3", "A4", "D4"}) {
    auto g = algebra(name, RingDescriptor::integers());
    ASSERT_LE(g.dim(), 30u);
    for (std::size_t i = 0; i < g.dim(); ++i)
      for (std::size_t j = i + 1; j < g.dim(); ++j)
        for (std::size_t k = j + 1; k < g.dim(); ++k) ASSERT_FALSE(jacobi_violation(g, i, j, k)) << name;
  }
}

TEST(Chevalley, JacobiRandomE8) {
  auto g = algebra("E8", RingDescriptor::integers());
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> d(0, g.dim() - 1);
  for (int t = 0; t < 2000; ++t) ASSERT_FALSE(jacobi_violation(g, d(rng), d(rng), d(rng)));
}

TEST(Chevalley, BracketIsAlternating) {
  auto g = algebra("A2", RingDescriptor::integers());
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> d(-5, 5);
  for (int t = 0; t < 50; ++t) {
    std::vector<Scalar> x, y;
    for (std::size_t i = 0; i < g.dim(); ++i) {
      x.emplace_back(g.ring(), d(rng));
      y.emplace_back(g.ring(), d(rng));
    }
    EXPECT_EQ(g.bracket(x, x), g.zero());
    EXPECT_EQ(add(g.bracket(x, y), g.bracket(y, x)), g.zero());
  }
  EXPECT_THROW(g.bracket(g.zero(), algebra("A1", RingDescriptor::integers()).zero()), std::invalid_argument);
}

TEST(ChevalleyGenerator, Basics) {
  auto g = algebra("A2", RingDescriptor::integers());
  const auto& L = g.lattice();
  const Scalar one = Scalar::one(g.ring()), zero = Scalar::zero(g.ring());
  for (std::size_t k = 0; k < L.roots().size(); ++k) {
    const LatVec& a = L.roots()[k];
    auto gen = chevalley_generator(g, a);
    auto id = gen.at(zero);
    for (std::size_t i = 0; i < g.dim(); ++i)
      for (std::size_t j = 0; j < g.dim(); ++j) EXPECT_EQ(id[i][j], i == j ? one : zero);
    auto x1 = gen.at(one);
    EXPECT_EQ(mat_apply(x1, g.basis_vector(g.e_index(k))), g.basis_vector(g.e_index(k)));
    // x_a(1) e_-a = e_-a + eps(a,-a) h_a - eps(a,-a) e_a
    const int s = g.cocycle()(a, -a);
    auto expected = g.basis_vector(*g.e_index(-a));
    for (const auto& t : g.coroot(a)) expected[t.index] += Scalar(g.ring(), s * t.coef);
    expected[g.e_index(k)] += Scalar(g.ring(), -s);
    EXPECT_EQ(mat_apply(x1, g.basis_vector(*g.e_index(-a))), expected);
    // one-parameter subgroup
    for (long sv : {-2l, 1l, 3l})
      for (long tv : {-1l, 2l}) {
        auto lhs = compose(gen.at(Scalar(g.ring(), sv)), gen.at(Scalar(g.ring(), tv)));
        EXPECT_EQ(lhs, gen.at(Scalar(g.ring(), sv + tv)));
      }
  }
}

TEST(ChevalleyGenerator, PreservesBracketOverF2OnA2) {
  auto g = algebra("A2", RingDescriptor::prime_field(2));
  for (const auto& a : g.lattice().roots()) {
    auto m = chevalley_generator(g, a).at(Scalar::one(g.ring()));
    EXPECT_TRUE(preserves_bracket(g, m)) << to_string(a);
  }
}

TEST(ChevalleyGenerator, PreservesBracketOverZOnD4) {
  auto g = algebra("D4", RingDescriptor::integers());
  for (std::size_t k : {0ul, 7ul, 13ul, 23ul}) {
    auto m = chevalley_generator(g, g.lattice().roots()[k]).at(Scalar(g.ring(), -2));
    EXPECT_TRUE(preserves_bracket(g, m));
  }
}

TEST(GraphAction, OrderNormAndBracket) {
  const std::vector<std::pair<std::string, int>> pairs = {{"D4", 3}, {"A3", 2}, {"E6", 2}};
  for (const auto& [name, order] : pairs) {
    auto g = algebra(name, RingDescriptor::integers());
    auto gamma = graph_automorphism(g.lattice(), order);
    auto eta = cocycle_correction(g.cocycle(), gamma);
    auto gm = graph_action_matrix(g, gamma, eta);
    auto nu = norm_map_matrix(gm, order);
    ScalarMatrix G = to_ring(g.ring(), gm), N = to_ring(g.ring(), nu);
    ScalarMatrix pw = G;
    for (int j = 1; j < order; ++j) pw = compose(pw, G);
    ScalarMatrix id = to_ring(g.ring(), norm_map_matrix(gm, 1));
    EXPECT_EQ(pw, id) << name;
    EXPECT_EQ(compose(N, G), N);
    EXPECT_EQ(compose(G, N), N);
    if (g.dim() <= 30) EXPECT_TRUE(preserves_bracket(g, G)) << name;
    // nu on fixed vectors is multiplication by p
    std::vector<long> fixed_h(g.dim(), 0);
    auto fixed = g.zero();
    for (std::size_t i = 0; i < g.rank(); ++i) fixed[i] = Scalar::one(g.ring());
    EXPECT_EQ(mat_apply(N, fixed), scale(fixed, Scalar(g.ring(), order)));
  }
}

TEST(GraphAction, NormIsSquareOfGammaMinusOneInCharThree) {
  auto g = algebra("D4", RingDescriptor::prime_field(3));
  auto gamma = graph_automorphism(g.lattice(), 3);
  auto gm = graph_action_matrix(g, gamma, cocycle_correction(g.cocycle(), gamma));
  PrimeField f(3);
  auto G = to_field(f, gm);
  auto N = to_field(f, norm_map_matrix(gm, 3));
  auto D = G;
  for (std::size_t i = 0; i < D.rows(); ++i) D(i, i) = f.sub(D(i, i), 1);
  EXPECT_EQ(D * D, N);
  // orbit sums are killed by nu
  const auto& L = g.lattice();
  FieldVector<PrimeField> orbit(g.dim(), 0);
  LatVec a = L.roots()[0];
  for (int j = 0; j < 3; ++j) orbit[*g.e_index(gamma.apply_power(a, j))] = 1;
  EXPECT_TRUE(is_zero_vec(N.apply(N.apply(orbit))));
}

TEST(ReducedLie, A2CharThree) {
  auto r = reduced_algebra("A2", 3);
  EXPECT_EQ(r.ancestor, "D4");
  EXPECT_EQ(r.dim_fixed(), 14u);
  EXPECT_EQ(r.dim_norm(), 7u);
  EXPECT_EQ(r.dim_quotient(), 7u);
  EXPECT_TRUE(r.norm_is_ideal);
  EXPECT_TRUE(r.covering_surjective);
  EXPECT_EQ(r.cover.size(), 8u);
  EXPECT_EQ(r.cover_kernel.size(), 1u);
  EXPECT_TRUE(r.kernel_central);
  EXPECT_FALSE(r.quotient_algebra->jacobi_violation());
  EXPECT_TRUE(r.quotient_algebra->is_antisymmetric());
  EXPECT_EQ(r.quotient_algebra->center().size(), 0u);
  // a2 over F3 has a one-dimensional center spanned by h1 - h2
  auto z = r.cover_algebra->center();
  ASSERT_EQ(z.size(), 1u);
  EXPECT_EQ(z[0][0], r.field.neg(z[0][1]));
  for (std::size_t i = 2; i < z[0].size(); ++i) EXPECT_EQ(z[0][i], 0u);
}

TEST(ReducedLie, A1CharTwoIsTwoDimensionalAbelian) {
  auto r = reduced_algebra("A1", 2);
  EXPECT_EQ(r.dim_fixed(), 5u);
  EXPECT_EQ(r.dim_norm(), 3u);
  EXPECT_EQ(r.dim_quotient(), 2u);
  EXPECT_TRUE(r.quotient_algebra->is_abelian());
  EXPECT_TRUE(r.covering_surjective);
}

TEST(ReducedLie, G2CharThreeIsNotQuasiSimple) {
  auto r = reduced_algebra("A2", 3);
  const auto& c = *r.fixed_algebra;
  auto z = c.center();
  QuotientSpace<PrimeField> coords(r.field, r.algebra.dim(), {}, r.fixed);
  std::vector<FieldVector<PrimeField>> n_coords;
  for (const auto& v : r.norm) n_coords.push_back(*coords.coords(v));
  EXPECT_TRUE(c.is_ideal(n_coords));
  EXPECT_GT(n_coords.size(), 0u);
  EXPECT_LT(n_coords.size(), c.dim());
  bool central = true;
  for (const auto& v : n_coords)
    for (std::size_t j = 0; j < c.dim(); ++j)
      if (!is_zero_vec(c.bracket(v, c.unit(j)))) central = false;
  EXPECT_FALSE(central);
  Subspace<PrimeField> nz(r.field, c.dim());
  for (const auto& v : n_coords) nz.add(v);
  for (const auto& v : z) nz.add(v);
  EXPECT_LT(nz.dim(), c.dim());
}

TEST(ReducedLie, G2CharTwoHasTrivialCenterAndCoprimeCollapse) {
  auto r = reduce_ancestor("D4", 3, 2, "D4/3 over F2");
  EXPECT_EQ(r.dim_fixed(), 14u);
  EXPECT_EQ(r.fixed_algebra->center().size(), 0u);
  EXPECT_EQ(r.dim_norm(), r.dim_fixed());
  auto e = reduce_ancestor("E6", 2, 3, "E6/2 over F3");
  EXPECT_EQ(e.dim_fixed(), 52u);
  EXPECT_EQ(e.dim_norm(), 52u);
}

TEST(ReducedLie, NormImageIsAnIdeal) {
  const std::vector<std::tuple<std::string, int, unsigned>> cases = {
      {"D4", 3, 3}, {"D4", 3, 2}, {"D4", 3, 5}, {"A3", 2, 2}, {"A3", 2, 3}, {"D5", 2, 2}, {"A5", 2, 2}};
  for (const auto& [name, order, q] : cases) {
    auto r = reduce_ancestor(name, order, q, name);
    EXPECT_TRUE(r.norm_in_fixed);
    EXPECT_TRUE(r.norm_is_ideal) << name << " over F" << q;
    if (q % order != 0) EXPECT_EQ(r.dim_norm(), r.dim_fixed());
  }
}

TEST(ReducedLie, E6CharTwo) {
  auto r = reduced_algebra("D4", 2);
  EXPECT_EQ(r.dim_fixed(), 52u);
  EXPECT_EQ(r.dim_norm(), 26u);
  EXPECT_EQ(r.dim_quotient(), 26u);
  EXPECT_TRUE(r.norm_is_ideal);
  EXPECT_TRUE(r.covering_surjective);
  EXPECT_EQ(r.cover_kernel.size(), 2u);
}

TEST(ReducedLie, RejectsNonExceptionalPairs) {
  EXPECT_THROW(reduced_algebra("A3", 3), std::invalid_argument);
  EXPECT_THROW(reduced_algebra("D4", 3), std::invalid_argument);
  EXPECT_THROW(reduced_algebra("E8", 2), std::invalid_argument);
}

TEST(ExceptionalAction, A2CharThree) {
  auto r = reduced_algebra("A2", 3);
  auto rep = exceptional_action_check(r);
  EXPECT_EQ(rep.generators.size(), 12u);
  EXPECT_TRUE(rep.identity_at_zero);
  EXPECT_TRUE(rep.all_ok());
  EXPECT_TRUE(rep.moves_beyond_cover);
  int long_lift = 0;
  for (const auto& g : rep.generators)
    if (g.lifts_to_cover) ++long_lift;
  EXPECT_EQ(long_lift, 6);
}

TEST(ExceptionalAction, D4CharTwo) {
  auto r = reduced_algebra("D4", 2);
  auto rep = exceptional_action_check(r);
  EXPECT_TRUE(rep.all_ok());
  EXPECT_TRUE(rep.moves_beyond_cover);
}
