#include "cova/covering.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "cova/errors.hpp"
#include "cova/lie_algebra.hpp"
#include "cova/reduced_lie.hpp"

namespace cova {

CoveringContext::CoveringContext(const std::string& lattice, int order, int wmax)
    : L_(build_root_lattice(lattice)),
      gamma_(graph_automorphism(L_, order)),
      table_(build_cocycle(L_, gamma_)),
      V_(L_.gram(), wmax),
      iv_(V_),
      iv_fixed_(V_, gamma_.fixed_basis),
      lift_(gamma_lift(gamma_, *table_.correction)) {}

std::string CoveringContext::pair() const { return "(" + L_.name() + "," + std::to_string(gamma_.order) + ")"; }

const IntMatrix& CoveringContext::gamma_ambient(int n) const {
  auto it = amb_.find(n);
  if (it != amb_.end()) return it->second;
  return amb_.emplace(n, ambient_matrix(iv_.space(n), lift_)).first->second;
}

const IntMatrix& CoveringContext::gamma_lattice(int n) const {
  auto it = lat_.find(n);
  if (it != lat_.end()) return it->second;
  return lat_.emplace(n, restrict_to_lattice(iv_.module(n).basis, gamma_ambient(n))).first->second;
}

IntMatrix CoveringContext::norm_lattice_map(int n) const {
  const IntMatrix& g = gamma_lattice(n);
  IntMatrix pw = IntMatrix::identity(g.rows()), sum = pw;
  for (int j = 1; j < gamma_.order; ++j) {
    pw = pw * g;
    sum = sum + pw;
  }
  return sum;
}

CoveringReport check_covering(const CoveringContext& ctx, int n) {
  CoveringReport rep;
  rep.pair = ctx.pair();
  rep.weight = n;
  const IntMatrix& B = ctx.iv().module(n).basis;
  const IntMatrix& G = ctx.gamma_ambient(n);
  rep.ambient_dim = B.cols();
  rep.iv_rank = B.rows();
  IntMatrix fixed = fixed_lattice(B, G);
  IntMatrix nu = IntMatrix::identity(G.rows()), pw = nu;
  for (int j = 1; j < ctx.gamma().order; ++j) {
    pw = pw * G;
    nu = nu + pw;
  }
  IntMatrix norm = image_lattice(B, nu);
  const IntMatrix& sub = ctx.iv_fixed().module(n).basis;
  IntMatrix sum = lattice_sum(sub, norm);
  rep.fixed_rank = fixed.rows();
  rep.sub_rank = sub.rows();
  rep.norm_rank = norm.rows();
  rep.sum_rank = sum.rows();
  rep.sub_in_fixed = lattice_contains(fixed, sub);
  rep.norm_in_fixed = lattice_contains(fixed, norm);
  rep.equal = lattice_equal(fixed, sum);
  if (!rep.equal) {
    const WeightSpace& W = ctx.iv().space(n);
    for (std::size_t i = 0; i < fixed.rows(); ++i)
      if (!lattice_contains(sum, fixed.row(i))) {
        std::ostringstream os;
        os << "fixed vector outside IV_{X^gamma} + nu(IV_X): " << to_string(W.from_row(fixed.row(i)));
        if (rep.sub_in_fixed && rep.norm_in_fixed) os << " (index " << lattice_index(fixed, sum) << ")";
        rep.witness = os.str();
        break;
      }
  }
  return rep;
}

namespace {

using Vec = FieldVector<PrimeField>;

FieldMatrix<PrimeField> reduce_mod(const PrimeField& f, const IntMatrix& m) {
  FieldMatrix<PrimeField> out(f, m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (const auto& [j, v] : m.row(i)) out(i, j) = f.from_rational(mpq_class(v));
  return out;
}

/// Left fixed space {v : v G = v} and left image {v nu} mod p.
std::pair<std::vector<Vec>, std::vector<Vec>> fixed_and_norm(const CoveringContext& ctx, const PrimeField& f, int n) {
  FieldMatrix<PrimeField> g = reduce_mod(f, ctx.gamma_lattice(n));
  for (std::size_t i = 0; i < g.rows(); ++i) g(i, i) = f.sub(g(i, i), 1);
  std::vector<Vec> fixed = g.transpose().right_kernel();
  std::vector<Vec> norm = reduce_mod(f, ctx.norm_lattice_map(n)).rref().rows;
  return {std::move(fixed), std::move(norm)};
}

std::vector<Vec> lattice_rows_mod(const PrimeField& f, const IntMatrix& outer, const IntMatrix& inner) {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < inner.rows(); ++i) {
    auto c = lattice_coordinates(outer, inner.row(i));
    if (!c) throw TheoremViolation("sublattice is not inside IV_X");
    Vec v(c->size(), 0);
    for (std::size_t j = 0; j < c->size(); ++j) v[j] = f.from_rational(mpq_class((*c)[j]));
    out.push_back(std::move(v));
  }
  return out;
}

bool is_zero_vec(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](auto x) { return x == 0; });
}

/// span(gens) + N == C and gens inside C.
bool covers(const PrimeField& f, const TatePiece& t, const std::vector<Vec>& gens) {
  Subspace<PrimeField> s(f, t.dim);
  for (const auto& v : gens) {
    if (!t.quotient.contains_whole(v)) return false;
    s.add(v);
  }
  for (const auto& v : t.norm) s.add(v);
  return s.dim() == t.quotient.whole_dim();
}

}  // namespace

CollapseReport check_coprime_collapse(const CoveringContext& ctx, std::uint32_t p, int n) {
  CollapseReport rep;
  rep.pair = ctx.pair();
  rep.p = p;
  rep.weight = n;
  PrimeField f(p);
  auto [fixed, norm] = fixed_and_norm(ctx, f, n);
  rep.dim = ctx.iv().module(n).rank();
  rep.fixed_dim = fixed.size();
  rep.norm_dim = norm.size();
  Subspace<PrimeField> cs(f, rep.dim);
  for (const auto& v : fixed) cs.add(v);
  rep.equal = rep.fixed_dim == rep.norm_dim &&
              std::all_of(norm.begin(), norm.end(), [&](const Vec& v) { return cs.contains(v); });
  return rep;
}

bool ReducedVA::ok() const {
  auto all = [](const std::vector<bool>& v) { return std::all_of(v.begin(), v.end(), [](bool b) { return b; }); };
  if (!well_defined.ok() || !sampled.ok() || !all(sub_covers) || !all(generated_covers) || !lie_match) return false;
  for (const auto& g : generators)
    if (!g.preserves_fixed || !g.preserves_norm || !g.preserves_products) return false;
  return true;
}

ReducedVA reduced_va(const CoveringContext& ctx, int wmax, unsigned generator_t, std::uint64_t seed,
                     std::size_t samples) {
  const int order = ctx.gamma().order;
  const auto p = static_cast<std::uint32_t>(order);
  ReducedVA out;
  out.pair = ctx.pair();
  out.p = p;
  out.tate.p = p;
  const IntegralForm& I = ctx.iv();
  const LatticeVA& V = ctx.va();
  ReducedForm R(I, p);
  const PrimeField& f = R.field();

  IntMatrix fixed1 = fixed_lattice(I.module(1).basis, ctx.gamma_ambient(1));
  std::vector<VAElement> S;
  for (std::size_t i = 0; i < fixed1.rows(); ++i) S.push_back(I.space(1).from_row(fixed1.row(i)));
  auto generated = generated_subva(I, S, wmax);

  for (int n = 0; n <= wmax; ++n) {
    auto [fixed, norm] = fixed_and_norm(ctx, f, n);
    const std::size_t d = I.module(n).rank();
    TatePiece t = make_tate_piece(f, n, d, std::move(fixed), std::move(norm));
    auto sub = lattice_rows_mod(f, I.module(n).basis, ctx.iv_fixed().module(n).basis);
    auto gen = lattice_rows_mod(f, I.module(n).basis, generated[n].basis);
    out.sub_covers.push_back(covers(f, t, sub));
    out.generated_covers.push_back(covers(f, t, gen));
    Subspace<PrimeField> s(f, d);
    for (const auto& v : sub) s.add(v);
    out.sub_injective.push_back(s.dim() == sub.size());
    out.sub_image.push_back(std::move(sub));
    out.generated_image.push_back(std::move(gen));
    out.tate.pieces.push_back(std::move(t));
  }

  for (int wa = 0; wa <= wmax; ++wa)
    for (int wb = 0; wb <= wmax; ++wb)
      for (long k = wa + wb - 1 - wmax; k <= wa + wb - 1; ++k) {
        const int w = static_cast<int>(wa + wb - 1 - k);
        const TatePiece& A = out.tate.pieces[wa];
        const TatePiece& B = out.tate.pieces[wb];
        const TatePiece& C = out.tate.pieces[w];
        const std::string tag = " weights " + std::to_string(wa) + "," + std::to_string(wb) + " mode " + std::to_string(k);
        for (const auto& c : A.fixed) {
          for (const auto& x : B.norm)
            out.well_defined.record(C.quotient.sub().contains(R.product(wa, c, k, wb, x)), "C_k N" + tag);
          for (const auto& c2 : B.fixed)
            out.well_defined.record(C.quotient.contains_whole(R.product(wa, c, k, wb, c2)), "C_k C" + tag);
        }
        for (const auto& x : A.norm)
          for (const auto& c : B.fixed)
            out.well_defined.record(C.quotient.sub().contains(R.product(wa, x, k, wb, c)), "N_k C" + tag);
      }

  std::mt19937_64 rng(seed);
  auto combo = [&](const std::vector<Vec>& gens, std::size_t d) {
    Vec v(d, 0);
    for (const auto& g : gens) {
      const auto c = static_cast<std::uint32_t>(rng() % p);
      for (std::size_t j = 0; j < d; ++j) v[j] = f.add(v[j], f.mul(c, g[j]));
    }
    return v;
  };
  for (std::size_t s = 0; s < samples; ++s) {
    const int wa = static_cast<int>(rng() % (wmax + 1)), wb = static_cast<int>(rng() % (wmax + 1));
    const long k = wa + wb - 1 - static_cast<long>(rng() % (wmax + 1));
    const TatePiece& A = out.tate.pieces[wa];
    const TatePiece& B = out.tate.pieces[wb];
    const Vec u = combo(A.fixed, A.dim), x = combo(A.norm, A.dim);
    const Vec v = combo(B.fixed, B.dim), y = combo(B.norm, B.dim);
    Vec ux = u, vy = v;
    for (std::size_t j = 0; j < A.dim; ++j) ux[j] = f.add(ux[j], x[j]);
    for (std::size_t j = 0; j < B.dim; ++j) vy[j] = f.add(vy[j], y[j]);
    Vec diff = R.product(wa, ux, k, wb, vy);
    const Vec base = R.product(wa, u, k, wb, v);
    for (std::size_t j = 0; j < diff.size(); ++j) diff[j] = f.sub(diff[j], base[j]);
    out.sampled.record(out.tate.pieces[wa + wb - 1 - k].quotient.sub().contains(diff),
                       "sample " + std::to_string(s) + " mode " + std::to_string(k));
  }

  // weight one against the reduced Lie algebra
  ReducedLie lie = reduce_ancestor(ctx.lattice().name(), order, p, out.pair);
  out.lie_quotient_dim = lie.dim_quotient();
  if (wmax >= 1) {
    const LieAlgebra& g = lie.algebra;
    const RootLattice& L = ctx.lattice();
    std::vector<Vec> image_of;
    for (std::size_t i = 0; i < g.dim(); ++i) {
      VAElement x = i < g.rank() ? V.heis(L.simple_root(static_cast<int>(i))) : V.exp(g.weight(i));
      image_of.push_back(R.reduce(1, x));
    }
    const std::size_t d1 = out.tate.pieces[1].dim;
    auto to_iv = [&](const Vec& v) {
      Vec r(d1, 0);
      for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0)
          for (std::size_t j = 0; j < d1; ++j) r[j] = f.add(r[j], f.mul(v[i], image_of[i][j]));
      return r;
    };
    const TatePiece& P = out.tate.pieces[1];
    bool match = lie.dim_quotient() == P.quotient.dim();
    std::vector<Vec> fixed_img, norm_img;
    for (const auto& v : lie.fixed) fixed_img.push_back(to_iv(v));
    for (const auto& v : lie.norm) norm_img.push_back(to_iv(v));
    Subspace<PrimeField> fs(f, d1), ns(f, d1);
    for (const auto& v : fixed_img) fs.add(v);
    for (const auto& v : norm_img) ns.add(v);
    match = match && fs.dim() == P.quotient.whole_dim() && ns.dim() == P.quotient.sub_dim();
    for (const auto& v : fixed_img) match = match && P.quotient.contains_whole(v);
    for (const auto& v : norm_img) match = match && P.quotient.sub().contains(v);
    for (std::size_t i = 0; i < lie.fixed.size() && match; ++i)
      for (std::size_t j = 0; j < lie.fixed.size() && match; ++j) {
        Vec lhs = to_iv(g.bracket(f, lie.fixed[i], lie.fixed[j]));
        Vec rhs = R.product(1, fixed_img[i], 0, 1, fixed_img[j]);
        for (std::size_t c = 0; c < d1; ++c) lhs[c] = f.sub(lhs[c], rhs[c]);
        if (!P.quotient.sub().contains(lhs)) match = false;
      }
    out.lie_match = match;
  }

  // orbit products of exp((e^a)_0) over fixed roots and orthogonal orbits
  const RootLattice& L = ctx.lattice();
  std::map<LatVec, ChevalleyAction> actions;
  auto action = [&](const LatVec& a) -> const ChevalleyAction& {
    auto it = actions.find(a);
    if (it == actions.end()) it = actions.emplace(a, va_generator_action(I, a, wmax)).first;
    return it->second;
  };
  std::vector<bool> seen(L.roots().size(), false);
  for (std::size_t r = 0; r < L.roots().size(); ++r) {
    if (seen[r]) continue;
    std::vector<LatVec> orbit;
    for (int j = 0; j < order; ++j) {
      LatVec b = ctx.gamma().apply_power(L.roots()[r], j);
      if (std::find(orbit.begin(), orbit.end(), b) == orbit.end()) orbit.push_back(b);
      seen[*L.root_index(b)] = true;
    }
    bool orthogonal = true;
    for (std::size_t i = 0; i < orbit.size(); ++i)
      for (std::size_t j = i + 1; j < orbit.size(); ++j)
        if (L.inner(orbit[i], orbit[j]) < 0) orthogonal = false;
    if (!orthogonal) continue;
    GeneratorAction ga;
    ga.label = "x";
    std::vector<FieldMatrix<PrimeField>> mats;
    for (int n = 0; n <= wmax; ++n) {
      const std::size_t d = out.tate.pieces[n].dim;
      FieldMatrix<PrimeField> m(f, d, d);
      for (std::size_t i = 0; i < d; ++i) m(i, i) = 1;
      std::uint32_t c = generator_t % p;
      for (const auto& b : orbit) {
        m = m * action(b).at(f, n, c);
        c = f.mul(c, f.from_long(ctx.correction().eta(b)));
      }
      mats.push_back(std::move(m));
    }
    for (const auto& b : orbit) ga.label += to_string(b);
    ga.preserves_fixed = ga.preserves_norm = ga.preserves_products = true;
    for (int n = 0; n <= wmax; ++n) {
      const TatePiece& t = out.tate.pieces[n];
      for (const auto& v : t.fixed) ga.preserves_fixed = ga.preserves_fixed && t.quotient.contains_whole(row_times(f, v, mats[n]));
      for (const auto& v : t.norm) ga.preserves_norm = ga.preserves_norm && t.quotient.sub().contains(row_times(f, v, mats[n]));
    }
    for (int wa = 0; wa <= wmax && ga.preserves_products; ++wa)
      for (int wb = 0; wb <= wmax && ga.preserves_products; ++wb)
        for (long k = wa + wb - 1 - wmax; k <= wa + wb - 1 && ga.preserves_products; ++k) {
          const int w = static_cast<int>(wa + wb - 1 - k);
          const auto& Q = out.tate.pieces[w].quotient;
          for (const auto& a : out.tate.pieces[wa].quotient.representatives())
            for (const auto& b : out.tate.pieces[wb].quotient.representatives()) {
              Vec lhs = row_times(f, R.product(wa, a, k, wb, b), mats[w]);
              Vec rhs = R.product(wa, row_times(f, a, mats[wa]), k, wb, row_times(f, b, mats[wb]));
              for (std::size_t c = 0; c < lhs.size(); ++c) lhs[c] = f.sub(lhs[c], rhs[c]);
              if (!is_zero_vec(lhs) && !Q.sub().contains(lhs)) ga.preserves_products = false;
            }
        }
    out.generators.push_back(std::move(ga));
  }
  return out;
}

}  // namespace cova
