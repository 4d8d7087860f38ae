#include <gtest/gtest.h>

#include <array>

#include "cova/cocycle.hpp"
#include "cova/graph_aut.hpp"
#include "cova/int_matrix.hpp"
#include "cova/root_lattice.hpp"

using namespace cova;

namespace {

// Vectors of norm 2*level in the even coordinate model of E8, coordinates doubled: either all entries even
// with even half-sum, or all entries odd with half-sum even.
long e8_model_count(long level) {
  long count = 0;
  const long target = 8 * level;
  std::array<int, 8> x{};
  auto rec = [&](auto&& self, int i, bool odd, long acc, long sum) -> void {
    if (acc > target) return;
    if (i == 8) {
      if (acc == target && (sum / 2) % 2 == 0) ++count;
      return;
    }
    for (int v = -6; v <= 6; ++v) {
      if ((v % 2 != 0) != odd) continue;
      x[i] = v;
      self(self, i + 1, odd, acc + v * v, sum + v);
    }
  };
  rec(rec, 0, false, 0, 0);
  rec(rec, 0, true, 0, 0);
  return count;
}

long ancestor_root_count(char family, int n) {
  if (family == 'A') return static_cast<long>(n) * (n + 1);
  if (family == 'D') return 2l * n * (n - 1);
  return n == 6 ? 72 : n == 7 ? 126 : 240;
}

std::vector<LatVec> fixed_basis_vectors(const GraphAut& g) {
  std::vector<LatVec> out;
  for (std::size_t i = 0; i < g.fixed_basis.rows(); ++i) out.push_back(g.from_fixed_coords([&] {
    LatVec e(g.fixed_basis.rows(), 0);
    e[i] = 1;
    return e;
  }()));
  return out;
}

}  // namespace

TEST(RootLattice, E8ModelOracle) {
  EXPECT_EQ(e8_model_count(1), 240);
  EXPECT_EQ(e8_model_count(2), 2160);
  auto L = build_root_lattice("E8");
  EXPECT_EQ(static_cast<long>(L.roots().size()), e8_model_count(1));
  EXPECT_EQ(static_cast<long>(vectors_of_norm(L.gram(), 4).size()), e8_model_count(2));
}

TEST(RootLattice, E8ThetaSeriesIsEisenstein) {
  auto L = build_root_lattice("E8");
  auto sigma3 = [](long n) {
    long s = 0;
    for (long d = 1; d <= n; ++d)
      if (n % d == 0) s += d * d * d;
    return s;
  };
  for (long n = 1; n <= 3; ++n) EXPECT_EQ(static_cast<long>(vectors_of_norm(L.gram(), 2 * n).size()), 240 * sigma3(n));
}

TEST(RootLattice, RootCountsAndInvariants) {
  const std::vector<std::string> names = {"A1", "A2", "A3", "A4", "A5", "A7", "D3", "D4",
                                          "D5", "D6", "D8", "E6", "E7", "E8"};
  const std::map<std::string, long> dets = {{"E6", 3}, {"E7", 2}, {"E8", 1}};
  for (const auto& name : names) {
    auto L = build_root_lattice(name);
    const int n = L.rank();
    EXPECT_EQ(static_cast<long>(L.roots().size()), ancestor_root_count(L.family(), n)) << name;
    for (const auto& r : L.roots()) {
      EXPECT_EQ(L.norm(r), 2);
      EXPECT_TRUE(L.is_root(-r));
    }
    std::vector<std::vector<long>> g(L.gram().begin(), L.gram().end());
    IntMatrix gm = IntMatrix::from_dense(g);
    mpz_class det = determinant(gm), prod = 1;
    for (const auto& d : snf_diag(gm)) prod *= d;
    EXPECT_EQ(det, prod) << name;
    long expected = L.family() == 'A' ? n + 1 : L.family() == 'D' ? 4 : dets.at(name);
    EXPECT_EQ(det, expected) << name;
    EXPECT_EQ(root_system_type(L.roots(), L.gram()), name == "D3" ? "A3" : name);
    for (int i = 0; i < n; ++i) EXPECT_EQ(L.roots()[i], L.simple_root(i));
  }
}

TEST(RootLattice, SmallCases) {
  EXPECT_EQ(build_root_lattice("A1").roots().size(), 2u);
  EXPECT_EQ(build_root_lattice("D4").roots().size(), 24u);
  EXPECT_EQ(vectors_of_norm(build_root_lattice("D4").gram(), 4).size(), 24u);
  EXPECT_THROW(build_root_lattice("B3"), std::invalid_argument);
  EXPECT_THROW(build_root_lattice("E9"), std::invalid_argument);
}

TEST(GraphAut, FoldingTable) {
  struct Row {
    std::string lattice;
    int order;
    std::string fixed, folded;
    int hvee;
  };
  const std::vector<Row> rows = {{"D4", 3, "A2", "G2", 4},   {"E6", 2, "D4", "F4", 9},     {"A3", 2, "A1+A1", "C2", 3},
                                 {"D5", 2, "D4", "B4", 7},   {"D4", 2, "A3", "B3", 5},     {"A5", 2, "A1+A1+A1", "C3", 4},
                                 {"D3", 2, "A1+A1", "B2", 3}};
  for (const auto& row : rows) {
    auto L = build_root_lattice(row.lattice);
    auto g = graph_automorphism(L, row.order);
    EXPECT_EQ(g.fixed_type, row.fixed) << row.lattice;
    EXPECT_EQ(g.folded_type, row.folded) << row.lattice;
    EXPECT_EQ(g.dual_coxeter, row.hvee) << row.lattice;
    // exact order and isometry
    for (int i = 0; i < L.rank(); ++i) {
      LatVec a = L.simple_root(i);
      EXPECT_EQ(g.apply_power(a, row.order), a);
      for (int j = 0; j < L.rank(); ++j) EXPECT_EQ(L.inner(g.apply(a), g.apply(L.simple_root(j))), L.gram()[i][j]);
    }
    bool nontrivial = false;
    for (const auto& r : L.roots()) nontrivial |= g.apply(r) != r;
    EXPECT_TRUE(nontrivial);
    // X^gamma is a direct summand and is spanned by the fixed roots
    std::vector<std::vector<long>> rows_b;
    IntMatrix comp = g.fixed_basis;
    for (const auto& d : snf_diag(comp)) EXPECT_EQ(d, 1);
    IntMatrix root_span(0, L.rank());
    for (const auto& r : L.roots())
      if (g.apply(r) == r) root_span.append_row(to_sparse(r));
    EXPECT_TRUE(lattice_equal(root_span, g.fixed_basis)) << row.lattice;
    for (const auto& v : fixed_basis_vectors(g)) EXPECT_EQ(g.apply(v), v);
  }
}

TEST(GraphAut, CentralChargeMetadata) {
  auto g = graph_automorphism(build_root_lattice("D4"), 3);
  EXPECT_EQ(g.central_charge.first, 4);
  EXPECT_EQ(g.central_charge.second, mpq_class(14, 5));
  auto c = graph_automorphism(build_root_lattice("A5"), 2);
  EXPECT_EQ(c.central_charge.second, mpq_class(6) - mpq_class(9, 5));
  // c = k dim(g) / (k + h^vee) at level 1 for F4 (dim 52) and G2 (dim 14)
  auto f = graph_automorphism(build_root_lattice("E6"), 2);
  auto level_one = [](long dim, int hvee) {
    mpq_class c(dim, 1 + hvee);
    c.canonicalize();
    return c;
  };
  EXPECT_EQ(f.central_charge.second, level_one(52, f.dual_coxeter));
  EXPECT_EQ(g.central_charge.second, level_one(14, g.dual_coxeter));
}

TEST(GraphAut, RejectsPairsOutsideTable) {
  EXPECT_THROW(graph_automorphism(build_root_lattice("A2"), 2), std::invalid_argument);
  EXPECT_THROW(graph_automorphism(build_root_lattice("E7"), 2), std::invalid_argument);
  EXPECT_THROW(graph_automorphism(build_root_lattice("D5"), 3), std::invalid_argument);
  EXPECT_NO_THROW(diagram_automorphism(build_root_lattice("A2"), 2));
}

TEST(Cocycle, IdentitiesOnAllRootPairs) {
  for (const auto& name : {"A1", "A2", "A4", "D4", "D5", "E6", "E7", "E8"}) {
    auto L = build_root_lattice(name);
    Cocycle eps(L.gram());
    LatVec zero(L.rank(), 0);
    for (const auto& a : L.roots()) {
      EXPECT_EQ(eps(a, a), -1);
      EXPECT_EQ(eps(zero, a), 1);
      EXPECT_EQ(eps(a, zero), 1);
      for (const auto& b : L.roots()) {
        long ip = L.inner(a, b);
        EXPECT_EQ(eps(a, b) * eps(b, a), (ip % 2 == 0) ? 1 : -1);
      }
    }
  }
}

TEST(Cocycle, BimultiplicativeOnNormFourVectors) {
  auto L = build_root_lattice("D4");
  Cocycle eps(L.gram());
  auto v4 = vectors_of_norm(L.gram(), 4);
  for (const auto& a : v4) {
    EXPECT_EQ(eps(a, a), 1);
    for (const auto& b : L.roots())
      for (const auto& c : {L.roots()[0], L.roots()[5]}) EXPECT_EQ(eps(a, b + c), eps(a, b) * eps(a, c));
  }
}

TEST(Cocycle, CorrectionMakesGammaAnAutomorphism) {
  const std::vector<std::pair<std::string, int>> pairs = {{"D4", 3}, {"E6", 2}, {"A3", 2}, {"D5", 2}, {"A5", 2}};
  for (const auto& [name, order] : pairs) {
    auto L = build_root_lattice(name);
    auto t = build_cocycle(L, graph_automorphism(L, order));
    ASSERT_TRUE(t.correction);
    const auto& k = *t.correction;
    EXPECT_TRUE(k.trivial_on_fixed) << name;
    EXPECT_TRUE(k.orbit_products_trivial) << name;
    const auto& g = *t.gamma;
    auto pts = vectors_up_to_norm(L.gram(), 4);
    for (const auto& a : pts)
      for (const auto& b : L.roots()) {
        // eta(a+b) eps(a,b) = eta(a) eta(b) eps(gamma a, gamma b)
        EXPECT_EQ(k.eta(a + b) * t.eps(a, b), k.eta(a) * k.eta(b) * t.eps(g.apply(a), g.apply(b))) << name;
      }
    for (const auto& a : pts) {
      int prod = 1;
      for (int j = 0; j < order; ++j) prod *= k.eta(g.apply_power(a, j));
      EXPECT_EQ(prod, 1) << name;
      if (g.apply(a) == a) EXPECT_EQ(k.eta(a), 1);
    }
  }
}

TEST(Cocycle, LieLevelA2FlipNeedsNontrivialEtaOnFixedRoot) {
  auto L = build_root_lattice("A2");
  auto g = diagram_automorphism(L, 2);
  auto k = cocycle_correction(Cocycle(L.gram()), g);
  EXPECT_TRUE(k.orbit_products_trivial);
  EXPECT_FALSE(k.trivial_on_fixed);
  EXPECT_EQ(g.fixed_type, "A1");
}
