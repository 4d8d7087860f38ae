#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "cova/covering.hpp"
#include "cova/cube.hpp"
#include "cova/errors.hpp"
#include "cova/fock.hpp"
#include "cova/integral_form.hpp"
#include "cova/lattice_va.hpp"
#include "cova/lie_algebra.hpp"
#include "cova/real_form.hpp"
#include "cova/reduced_lie.hpp"
#include "cova/va_axioms.hpp"
#include "cova/va_morphism.hpp"

using namespace cova;

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int n, bool ok, const std::string& what, const std::string& detail) {
  if (!ok) ++failures;
  std::cout << "criterion " << n << ": " << (ok ? "PASS" : "FAIL") << "  " << what << "  [" << detail << "]"
            << std::endl;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double s) {
  std::ostringstream os;
  os.precision(2);
  os << std::fixed << s << "s";
  return os.str();
}

void graded_dimensions() {
  const auto t0 = Clock::now();
  const Gram g = build_root_lattice("E8").gram();
  const long want[] = {1, 248, 4124};
  bool ok = true;
  std::string got;
  for (int n = 0; n <= 2; ++n) {
    const std::size_t fock = fock_basis(g, n).size();
    const mpz_class series = graded_dimension(g, n);
    ok = ok && series == want[n] && fock == static_cast<std::size_t>(want[n]);
    got += (n ? "," : "") + std::to_string(fock) + "/" + series.get_str();
  }
  const double s = seconds_since(t0);
  report(1, ok && s < 30, "E8 graded dimensions at weights 0..2 by enumeration and by series",
         "fock/series " + got + ", " + fmt(s));
}

void covering_lemma() {
  const auto t0 = Clock::now();
  bool ok = true;
  std::string bad;
  std::size_t cases = 0;
  for (auto [name, order] : {std::pair{"D4", 3}, std::pair{"E6", 2}, std::pair{"A3", 2}, std::pair{"D5", 2}}) {
    const int top = std::string(name) == "A3" ? 3 : 2;
    CoveringContext ctx(name, order, top);
    for (int n = 0; n <= top; ++n) {
      const CoveringReport r = check_covering(ctx, n);
      ++cases;
      if (!r.ok()) {
        ok = false;
        bad += " " + r.pair + "@" + std::to_string(n) + ":" + r.witness;
      }
      if (n == 1) {
        std::size_t fixed_roots = 0;
        for (const auto& a : ctx.lattice().roots())
          if (ctx.gamma().apply(a) == a) ++fixed_roots;
        if (r.sub_rank != ctx.gamma().fixed_basis.rows() + fixed_roots) {
          ok = false;
          bad += " " + r.pair + " sub rank";
        }
      }
    }
  }
  report(2, ok, "fixed integral form = sub-lattice form + norm image, Hermite equality",
         std::to_string(cases) + " (pair, weight) cases, " + fmt(seconds_since(t0)) + bad);
}

void coprime_collapse() {
  bool ok = true;
  std::string bad;
  std::size_t cases = 0;
  for (auto [name, order, p] : {std::tuple{"D4", 3, 2u}, std::tuple{"E6", 2, 3u}, std::tuple{"A3", 2, 3u},
                                std::tuple{"D5", 2, 3u}}) {
    CoveringContext ctx(name, order, 2);
    for (int n = 0; n <= 2; ++n) {
      const CollapseReport r = check_coprime_collapse(ctx, p, n);
      ++cases;
      const bool rank_ok = r.fixed_dim == check_covering(ctx, n).fixed_rank;
      if (!r.equal || !rank_ok) {
        ok = false;
        bad += " " + r.pair + "@" + std::to_string(n);
      }
    }
  }
  report(3, ok, "norm image = fixed points for coprime characteristic",
         std::to_string(cases) + " cases, weights <= 2" + bad);
}

void exceptional_dims() {
  const ReducedLie a2 = reduced_algebra("A2", 3);
  const bool a2_ok = a2.dim_fixed() == 14 && a2.dim_norm() == 7 && a2.dim_quotient() == 7 && a2.norm_is_ideal;
  const ReducedLie a1 = reduced_algebra("A1", 2);
  const bool a1_ok = a1.dim_quotient() == 2 && a1.quotient_algebra->is_abelian();

  const auto& c = *a2.fixed_algebra;
  QuotientSpace<PrimeField> coords(a2.field, a2.algebra.dim(), {}, a2.fixed);
  std::vector<FieldVector<PrimeField>> n;
  for (const auto& v : a2.norm) n.push_back(*coords.coords(v));
  bool central = true;
  for (const auto& v : n)
    for (std::size_t j = 0; j < c.dim(); ++j)
      for (auto x : c.bracket(v, c.unit(j)))
        if (x) central = false;
  const bool g2_ok = c.is_ideal(n) && !n.empty() && n.size() < c.dim() && !central;
  report(4, a2_ok && a1_ok && g2_ok, "exceptional reductions",
         "(A2,3) fixed/norm/quotient " + std::to_string(a2.dim_fixed()) + "/" + std::to_string(a2.dim_norm()) + "/" +
             std::to_string(a2.dim_quotient()) + "; (A1,2) quotient dim " + std::to_string(a1.dim_quotient()) +
             (a1.quotient_algebra->is_abelian() ? " abelian" : " non-abelian") + "; G2 char 3 ideal dim " +
             std::to_string(n.size()) + (central ? " central" : " non-central"));
}

void va_axioms() {
  const auto t0 = Clock::now();
  bool ok = true;
  std::size_t z = 0, z_rej = 0, f3 = 0, f3_rej = 0;
  std::string bad;
  std::uint64_t seed = 100;
  for (const char* name : {"A1", "A2", "A3", "D4"}) {
    LatticeVA V(build_root_lattice(name).gram(), 6);
    const AxiomReport r = borcherds_check(V, seed++, 130, 3);
    z += r.checked;
    z_rej += r.rejected;
    if (!r.ok() || r.checked != 130) {
      ok = false;
      bad += std::string(" Z ") + name + " " + r.witness;
    }
  }
  for (const char* name : {"A1", "A2"}) {
    LatticeVA V(build_root_lattice(name).gram(), 5);
    IntegralForm I(V);
    ReducedForm R(I, 3);
    const AxiomReport r = borcherds_check(R, seed++, 260, 3);
    f3 += r.checked;
    f3_rej += r.rejected;
    if (!r.ok() || r.checked != 260) {
      ok = false;
      bad += std::string(" F3 ") + name + " " + r.witness;
    }
  }
  LatticeVA V(build_root_lattice("A2").gram(), 4);
  bool truncation = false;
  try {
    V.product(V.exp({1, 0}), -4, V.exp({0, 1}));
  } catch (const TruncationError&) {
    truncation = true;
  }
  const AxiomReport vc = vacuum_creation_check(V, 3);
  const AxiomReport tr = translation_check(V, 2, 1);
  ok = ok && truncation && vc.ok() && tr.ok() && z >= 500 && f3 >= 500;
  report(5, ok, "Borcherds identity over Z and F3, vacuum, creation, translation",
         "Borcherds Z " + std::to_string(z) + " (" + std::to_string(z_rej) + " redrawn past truncation), F3 " +
             std::to_string(f3) + " (" + std::to_string(f3_rej) + " redrawn); vacuum/creation " +
             std::to_string(vc.checked) + ", translation " + std::to_string(tr.checked) + "; truncation " +
             (truncation ? "raised" : "NOT raised") + ", " + fmt(seconds_since(t0)) + bad);
}

void chevalley_action() {
  const RootLattice L = build_root_lattice("A2");
  LatticeVA V(L.gram(), 2);
  IntegralForm I(V);
  std::mt19937_64 rng(31);
  bool ok = true;
  std::string bad;
  std::size_t z_pairs = 0, p_pairs = 0, lattice = 0, weight_one = 0;

  std::vector<ChevalleyAction> xs;
  for (const auto& a : L.roots()) xs.push_back(va_generator_action(I, a, 2));

  for (const auto& x : xs)
    for (long t : {-2L, 1L, 3L})
      for (int n = 0; n <= 2; ++n) {
        ++lattice;
        if (!(x.at(n, t) * x.at(n, -t) == IntMatrix::identity(I.module(n).rank()))) {
          ok = false;
          bad += " lattice " + to_string(x.root);
        }
      }

  // over Z: x(a_k b) = x(a)_k x(b) for integral basis states
  while (z_pairs < 200) {
    const auto& x = xs[rng() % xs.size()];
    const int wa = static_cast<int>(rng() % 3), wb = static_cast<int>(rng() % 3);
    const int w = static_cast<int>(rng() % 3);
    const long k = wa + wb - w - 1;
    const auto A = I.elements(wa), B = I.elements(wb);
    const VAElement a = A[rng() % A.size()], b = B[rng() % B.size()];
    const mpq_class t = static_cast<long>(rng() % 7) - 3;
    ++z_pairs;
    if (!(x.apply(V, V.product(a, k, b), t) == V.product(x.apply(V, a, t), k, x.apply(V, b, t)))) {
      ok = false;
      bad += " Z " + to_string(x.root);
    }
  }
  for (std::uint32_t p : {2u, 3u}) {
    ReducedForm R(I, p);
    const PrimeField& f = R.field();
    for (std::size_t s = 0; s < 200; ++s) {
      const auto& x = xs[rng() % xs.size()];
      const int wa = static_cast<int>(rng() % 3), wb = static_cast<int>(rng() % 3);
      const int w = static_cast<int>(rng() % 3);
      const long k = wa + wb - w - 1;
      auto rand_vec = [&](int n) {
        ReducedForm::Vec v(R.dim(n));
        for (auto& c : v) c = static_cast<std::uint32_t>(rng() % p);
        return v;
      };
      const auto a = rand_vec(wa), b = rand_vec(wb);
      const auto t = static_cast<std::uint32_t>(rng() % p);
      ++p_pairs;
      const auto lhs = row_times(f, R.product(wa, a, k, wb, b), x.at(f, w, t));
      const auto rhs = R.product(wa, row_times(f, a, x.at(f, wa, t)), k, wb, row_times(f, b, x.at(f, wb, t)));
      if (lhs != rhs) {
        ok = false;
        bad += " F" + std::to_string(p) + " " + to_string(x.root);
      }
    }
  }
  // weight one against the Lie-level generator, exactly over Z and mod 2, 3
  const LieAlgebra g(L, RingDescriptor::integers());
  auto to_va = [&](std::size_t i) {
    if (i < g.rank()) return V.heis(L.simple_root(static_cast<int>(i)));
    return V.exp(g.weight(i));
  };
  for (std::size_t r = 0; r < L.roots().size(); ++r) {
    const ChevalleyGenerator lie = chevalley_generator(g, L.roots()[r]);
    for (long t : {-1L, 1L, 2L})
      for (std::size_t j = 0; j < g.dim(); ++j) {
        VAElement expect;
        mpq_class tk = 1;
        for (const auto& d : lie.divided_powers) {
          for (std::size_t i = 0; i < g.dim(); ++i)
            if (sgn(d[i][j]) != 0) expect += tk * d[i][j] * to_va(i);
          tk *= t;
        }
        ++weight_one;
        if (!(xs[r].apply(V, to_va(j), t) == expect)) {
          ok = false;
          bad += " weight-one Z " + to_string(L.roots()[r]);
        }
      }
    for (std::uint32_t p : {2u, 3u}) {
      ReducedForm R(I, p);
      const PrimeField& f = R.field();
      const LieAlgebra gp(L, RingDescriptor::prime_field(p));
      const auto P = chevalley_in_weight_one(R, gp);
      const auto M = chevalley_generator(gp, L.roots()[r]).at(f, 1u);
      const auto X = xs[r].at(f, 1, 1u);
      for (std::size_t j = 0; j < gp.dim(); ++j) {
        FieldVector<PrimeField> expect(R.dim(1), 0);
        for (std::size_t i = 0; i < gp.dim(); ++i)
          for (std::size_t c = 0; c < expect.size(); ++c) expect[c] = f.add(expect[c], f.mul(M(i, j), P[i][c]));
        ++weight_one;
        if (row_times(f, P[j], X) != expect) {
          ok = false;
          bad += " weight-one F" + std::to_string(p);
        }
      }
    }
  }
  report(6, ok, "Chevalley generators on the A2 vertex algebra over Z, F2, F3",
         "product pairs Z " + std::to_string(z_pairs) + ", F2+F3 " + std::to_string(p_pairs) + "; lattice automorphisms " +
             std::to_string(lattice) + "; weight-one columns " + std::to_string(weight_one) + bad);
}

void real_form() {
  bool pd = true;
  {
    LatticeVA V(build_root_lattice("A1").gram(), 2);
    for (int n = 1; n <= 2; ++n) pd = pd && positive_definite(tilde_gram(V, tilde_basis(V, n)));
  }
  const RootLattice L = build_root_lattice("E8");
  LatticeVA V(L.gram(), 1);
  pd = pd && positive_definite(tilde_gram(V, tilde_basis(V, 1)));
  const CompactTableReport t = compact_bracket_table(V, L);
  report(7, pd && t.literal_mismatches == 0, "positive definite real forms and the E8 compact bracket table as printed",
         std::string("Grams A1 w1,w2 and E8 w1 ") + (pd ? "positive definite" : "NOT positive definite") +
             "; printed table: " + std::to_string(t.literal_mismatches) + "/" + std::to_string(t.entries) +
             " entries differ (" + std::to_string(t.sign_mismatches) + " in [H_a,X-_b] = (a,b) X+_b, " +
             std::to_string(t.inner_one_mismatches) + " with (a,b) = 1), first " + t.literal_witness +
             "; with [H_a,X-_b] = -(a,b) X+_b and the (a,b) = 1 brackets: " + std::to_string(t.corrected_mismatches) +
             " differ");
}

struct Cube {
  LatticeVA V;
  IntegralForm I;
  ReducedForm R;
  TensorCube cube;
  Cube(const std::string& name, int base, int top, bool diagonal = false)
      : V(build_root_lattice(name).gram(), base), I(V), R(I, 3), cube(R, top, diagonal) {}
};

void regraded_lie() {
  const auto t0 = Clock::now();
  bool ok = true;
  std::string detail;
  {
    Cube F("E8", 1, 3, true);
    const Weight3Lie W = weight3_lie(regrade3(F.cube));
    const LieChecks c = check_weight3_lie(W, 17, 5000);
    const std::size_t bad = chevalley_mismatches(W, F.R, LieAlgebra(build_root_lattice("E8"), RingDescriptor::prime_field(3)));
    ok = ok && W.algebra.dim() == 248 && c.ok() && c.jacobi_triples == 5000 && bad == 0;
    detail = "E8 dim " + std::to_string(W.algebra.dim()) + ", Jacobi " + std::to_string(c.jacobi_triples) + " with " +
             std::to_string(c.jacobi_failures) + " failures, form invariant " + (c.form_invariant ? "yes" : "no") +
             ", Chevalley mismatches " + std::to_string(bad);
  }
  for (const char* name : {"A1", "A2"}) {
    Cube F(name, 3, 6);
    const Weight3Lie W = weight3_lie(regrade3(F.cube));
    const LieChecks c = check_weight3_lie(W, 1, 0);
    const std::size_t bad = chevalley_mismatches(W, F.R, LieAlgebra(build_root_lattice(name), RingDescriptor::prime_field(3)));
    ok = ok && c.ok() && bad == 0;
    detail += std::string("; ") + name + " exhaustive Jacobi " + std::to_string(c.jacobi_triples) + ", mismatches " +
              std::to_string(bad);
  }
  for (const char* name : {"A1", "A2"}) {
    Cube F(name, 5, 15, true);
    const RegradedVA V = regrade3(F.cube);
    std::size_t checked = 0;
    bool central = false, good = true;
    for (long m = -2; m <= 2; ++m)
      for (long n = -2; n <= 2; ++n) {
        const AffineReport r = affine_commutator_check(V, m, n, 1);
        checked += r.identity.checked;
        good = good && r.identity.ok();
        central = central || r.central_term_seen;
      }
    ok = ok && good && central && checked > 0;
    detail += std::string("; affine ") + name + " " + std::to_string(checked) + (good ? " ok" : " FAILED");
  }
  report(8, ok, "regraded weight-3 Lie algebra mod 3 and the affine commutator",
         detail + ", " + fmt(seconds_since(t0)));
}

void eta_transversal_mechanics() {
  Cube F("A1", 6, 6);
  const EtaTransversal t = eta_transversal(F.cube, 5, 100);
  std::vector<std::size_t> dims;
  for (int w = 0; w <= 6; ++w) dims.push_back(graded_dimension(F.V.gram(), w).get_ui());
  bool counts = true;
  std::string q;
  for (int n = 0; n <= 6; ++n) {
    const TatePiece& p = t.tate.at(n);
    const CubeCounts c = cube_tate_counts(dims, n);
    counts = counts && p.dim == c.dim && p.fixed_dim() == c.fixed && p.norm_dim() == c.norm &&
             p.quotient_dim() == (n % 3 == 0 ? dims[n / 3] : 0);
    q += (n ? "," : "") + std::to_string(p.quotient_dim());
  }
  const ModeSupportReport m = mode_support_check(F.cube, 2);
  const ProductCheck h = eta_homomorphism_check(F.cube, 2);
  const bool ok = t.ok() && counts && m.support.ok() && m.expansion.ok() && m.support.checked > 0 && h.ok() &&
                  h.checked > 0;
  report(9, ok, "eta transversal on the cube of the truncated A1 vertex algebra over F3",
         "quotient dims by cube weight " + q + "; fixed = eta + norm " + (t.ok() ? "yes" : "no") + "; mode support " +
             std::to_string(m.support.checked) + " products off 2 mod 3, " + std::to_string(m.expansion.checked) +
             " expansions; eta homomorphism " + std::to_string(h.checked) +
             " pairs" + (ok ? "" : " " + m.support.witness + m.expansion.witness + h.witness));
}

std::string without_timestamp(const std::string& path) {
  std::ifstream in(path);
  std::string line, out;
  while (std::getline(in, line))
    if (line.find("\"timestamp\"") == std::string::npos) out += line + "\n";
  return out;
}

void determinism(const std::string& cli) {
  const std::string a = "acceptance_all_a.json", b = "acceptance_all_b.json";
  const int ra = std::system((cli + " all --seed 7 --out " + a + " > /dev/null").c_str());
  const int rb = std::system((cli + " all --seed 7 --out " + b + " > /dev/null").c_str());
  const std::string ja = without_timestamp(a), jb = without_timestamp(b);
  const bool ok = ra == 0 && rb == 0 && !ja.empty() && ja == jb;
  report(10, ok, "two runs of 'all --seed 7' give identical reports",
         std::to_string(ja.size()) + " bytes, exit codes " + std::to_string(ra) + "/" + std::to_string(rb));
  std::remove(a.c_str());
  std::remove(b.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "cova";
  graded_dimensions();
  covering_lemma();
  coprime_collapse();
  exceptional_dims();
  va_axioms();
  chevalley_action();
  real_form();
  regraded_lie();
  eta_transversal_mechanics();
  determinism(cli);
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criterion failing") << std::endl;
  return failures == 0 ? 0 : 1;
}
