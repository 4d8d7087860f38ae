#include "cova/reduced_lie.hpp"

#include <algorithm>
#include <stdexcept>

#include "cova/errors.hpp"

namespace cova {

using Vec = FieldVector<PrimeField>;

std::pair<std::string, int> exceptional_ancestor(std::string_view xprime, int p) {
  const std::string x(xprime);
  if (x == "A2" && p == 3) return {"D4", 3};
  if (x == "A1" && p == 2) return {"A2", 2};
  if (x == "D4" && p == 2) return {"E6", 2};
  if (x.size() == 2 && x[0] == 'D' && p == 2) {
    const int n = x[1] - '0';
    if (n == 3 || (n > 4 && n < 8)) return {"D" + std::to_string(n + 1), 2};
  }
  throw std::invalid_argument("(" + x + ", " + std::to_string(p) + ") is not an exceptional pair");
}

namespace {

FiniteLie<PrimeField> restricted_algebra(const LieAlgebra& g, const PrimeField& f, const QuotientSpace<PrimeField>& q) {
  auto unit = [&](std::size_t i) {
    Vec e(q.dim(), 0);
    e[i] = 1;
    return q.lift(e);
  };
  return FiniteLie<PrimeField>(f, q.dim(), [&](std::size_t i, std::size_t j) {
    auto c = q.coords(g.bracket(f, unit(i), unit(j)));
    if (!c) throw TheoremViolation("subspace is not closed under the bracket");
    return *c;
  });
}

}  // namespace

ReducedLie reduce_ancestor(std::string_view ancestor, int order, unsigned q, const std::string& label) {
  RootLattice L = build_root_lattice(ancestor);
  GraphAut gamma;
  try {
    gamma = graph_automorphism(L, order);
  } catch (const std::invalid_argument&) {
    gamma = diagram_automorphism(L, order);
  }
  Cocycle eps(L.gram());
  CocycleCorrection eta = cocycle_correction(eps, gamma);
  PrimeField f(q);
  ReducedLie r(LieAlgebra(L, RingDescriptor::prime_field(q)), gamma, eta, f);
  r.pair = label;
  r.ancestor = std::string(ancestor);
  r.order = order;
  const LieAlgebra& g = r.algebra;
  const std::size_t n = g.dim();

  auto gm = graph_action_matrix(g, gamma, eta);
  r.gamma_matrix = to_field(f, gm);
  r.nu_matrix = to_field(f, norm_map_matrix(gm, order));

  FieldMatrix<PrimeField> gm1 = r.gamma_matrix;
  for (std::size_t i = 0; i < n; ++i) gm1(i, i) = f.sub(gm1(i, i), 1);
  r.fixed = gm1.right_kernel();
  r.norm = r.nu_matrix.transpose().rref().rows;

  Subspace<PrimeField> cs(f, n);
  for (const auto& v : r.fixed) cs.add(v);
  r.norm_in_fixed = std::all_of(r.norm.begin(), r.norm.end(), [&](const Vec& v) { return cs.contains(v); });
  if (!r.norm_in_fixed) throw TheoremViolation("norm image is not contained in the fixed points");

  Subspace<PrimeField> ns(f, n);
  for (const auto& v : r.norm) ns.add(v);
  r.norm_is_ideal = true;
  for (const auto& c : r.fixed)
    for (const auto& v : r.norm)
      if (!ns.contains(g.bracket(f, c, v))) r.norm_is_ideal = false;

  QuotientSpace<PrimeField> cq(f, n, {}, r.fixed);
  r.fixed_algebra.emplace(restricted_algebra(g, f, cq));
  r.quotient.emplace(f, n, r.norm, r.fixed);
  if (r.norm_is_ideal) r.quotient_algebra.emplace(restricted_algebra(g, f, *r.quotient));

  std::vector<LatVec> fixed_roots;
  for (const auto& a : L.roots())
    if (gamma.apply(a) == a) fixed_roots.push_back(a);
  r.cover_roots = fixed_roots;
  for (const auto& b : simple_roots_of(fixed_roots)) {
    Vec v(n, 0);
    for (const auto& t : g.coroot(b)) v[t.index] = f.from_long(t.coef);
    r.cover.push_back(v);
  }
  for (const auto& b : fixed_roots) {
    Vec v(n, 0);
    v[*g.e_index(b)] = 1;
    r.cover.push_back(v);
  }
  QuotientSpace<PrimeField> gq(f, n, {}, r.cover);
  if (gq.dim() != r.cover.size()) throw std::logic_error("covering subalgebra basis is dependent");
  r.cover_algebra.emplace(restricted_algebra(g, f, gq));

  if (r.quotient) {
    const std::size_t dq = r.quotient->dim();
    FieldMatrix<PrimeField> proj(f, dq, r.cover.size());
    for (std::size_t j = 0; j < r.cover.size(); ++j) {
      auto c = r.quotient->coords(r.cover[j]);
      if (!c) throw TheoremViolation("covering subalgebra is not inside the fixed points");
      r.cover_projection.push_back(*c);
      for (std::size_t i = 0; i < dq; ++i) proj(i, j) = (*c)[i];
    }
    r.covering_surjective = proj.rank() == dq;
    r.cover_kernel = proj.right_kernel();
    r.kernel_central = true;
    for (const auto& k : r.cover_kernel)
      for (std::size_t j = 0; j < r.cover.size(); ++j) {
        Vec b = r.cover_algebra->bracket(k, r.cover_algebra->unit(j));
        if (std::any_of(b.begin(), b.end(), [](auto x) { return x != 0; })) r.kernel_central = false;
      }
  }
  return r;
}

ReducedLie reduced_algebra(std::string_view xprime, int p) {
  auto [anc, order] = exceptional_ancestor(xprime, p);
  return reduce_ancestor(anc, order, static_cast<unsigned>(p), std::string(xprime) + "," + std::to_string(p));
}

std::vector<std::pair<std::string, FieldMatrix<PrimeField>>> fixed_group_generators(const ReducedLie& r, unsigned t) {
  const LieAlgebra& g = r.algebra;
  const auto& L = g.lattice();
  const PrimeField& f = r.field;
  std::vector<std::pair<std::string, FieldMatrix<PrimeField>>> out;
  std::vector<bool> seen(L.roots().size(), false);
  for (std::size_t k = 0; k < L.roots().size(); ++k) {
    if (seen[k]) continue;
    std::vector<LatVec> orbit;
    LatVec a = L.roots()[k];
    for (int j = 0; j < r.gamma.order; ++j) {
      LatVec b = r.gamma.apply_power(a, j);
      if (std::find(orbit.begin(), orbit.end(), b) == orbit.end()) orbit.push_back(b);
      seen[*L.root_index(b)] = true;
    }
    if (orbit.size() == 1) {
      out.emplace_back("x" + to_string(a), chevalley_generator(g, a).at(f, t));
      continue;
    }
    bool orthogonal = true;
    for (std::size_t i = 0; i < orbit.size(); ++i)
      for (std::size_t j = i + 1; j < orbit.size(); ++j)
        if (L.inner(orbit[i], orbit[j]) < 0) orthogonal = false;
    if (!orthogonal) continue;
    FieldMatrix<PrimeField> m(f, g.dim(), g.dim());
    for (std::size_t i = 0; i < g.dim(); ++i) m(i, i) = 1;
    unsigned c = t % f.p;
    std::string label = "x";
    for (std::size_t j = 0; j < orbit.size(); ++j) {
      m = m * chevalley_generator(g, orbit[j]).at(f, c);
      label += to_string(orbit[j]);
      c = f.mul(c, f.from_long(r.eta.eta(orbit[j])));
    }
    out.emplace_back(label, std::move(m));
  }
  return out;
}

std::optional<FieldMatrix<PrimeField>> induced_on_quotient(const ReducedLie& r, const FieldMatrix<PrimeField>& m) {
  const auto& q = *r.quotient;
  FieldMatrix<PrimeField> out(r.field, q.dim(), q.dim());
  for (std::size_t k = 0; k < q.dim(); ++k) {
    auto c = q.coords(m.apply(q.representatives()[k]));
    if (!c) return std::nullopt;
    for (std::size_t i = 0; i < q.dim(); ++i) out(i, k) = (*c)[i];
  }
  for (const auto& v : r.norm)
    if (!q.sub().contains(m.apply(v))) return std::nullopt;
  return out;
}

namespace {

bool lifts_to_cover(const ReducedLie& r, const FieldMatrix<PrimeField>& phi) {
  const PrimeField& f = r.field;
  const auto& cover = *r.cover_algebra;
  const std::size_t m = cover.dim(), dq = r.quotient->dim(), k = r.cover_kernel.size();
  // preimages of the quotient basis
  std::vector<Vec> cols;
  std::vector<std::size_t> chosen;
  Subspace<PrimeField> span(f, dq);
  for (std::size_t j = 0; j < m; ++j)
    if (span.add(r.cover_projection[j])) chosen.push_back(j);
  std::vector<Vec> chosen_proj;
  for (auto j : chosen) chosen_proj.push_back(r.cover_projection[j]);
  QuotientSpace<PrimeField> pq(f, dq, {}, chosen_proj);
  auto psi0 = [&](const Vec& x) {
    Vec img(dq, 0);
    for (std::size_t l = 0; l < m; ++l)
      if (x[l] != 0)
        for (std::size_t i = 0; i < dq; ++i) img[i] = f.add(img[i], f.mul(x[l], r.cover_projection[l][i]));
    Vec target = phi.apply(img);
    auto c = pq.coords(target);
    Vec y(m, 0);
    for (std::size_t s = 0; s < chosen.size(); ++s) y[chosen[s]] = (*c)[s];
    return y;
  };
  std::vector<Vec> psi_basis;
  for (std::size_t l = 0; l < m; ++l) psi_basis.push_back(psi0(cover.unit(l)));
  auto psi_apply = [&](const Vec& x) {
    Vec y(m, 0);
    for (std::size_t l = 0; l < m; ++l)
      if (x[l] != 0)
        for (std::size_t i = 0; i < m; ++i) y[i] = f.add(y[i], f.mul(x[l], psi_basis[l][i]));
    return y;
  };
  QuotientSpace<PrimeField> kq(f, m, {}, r.cover_kernel);
  // unknown zeta: m x k, index l*k + c
  const std::size_t unknowns = m * k;
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      Vec br = cover.bracket(cover.unit(i), cover.unit(j));
      Vec lhs = cover.bracket(psi_basis[i], psi_basis[j]);
      Vec rhs = psi_apply(br);
      Vec res(m);
      for (std::size_t t = 0; t < m; ++t) res[t] = f.sub(lhs[t], rhs[t]);
      auto rc = kq.coords(res);
      if (!rc) return false;
      for (std::size_t c = 0; c < k; ++c) {
        Vec row(unknowns + 1, 0);
        for (std::size_t l = 0; l < m; ++l) row[l * k + c] = br[l];
        row[unknowns] = (*rc)[c];
        rows.push_back(std::move(row));
      }
    }
  FieldMatrix<PrimeField> a(f, rows.size(), unknowns), ab(f, rows.size(), unknowns + 1);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j <= unknowns; ++j) {
      if (j < unknowns) a(i, j) = rows[i][j];
      ab(i, j) = rows[i][j];
    }
  return a.rank() == ab.rank();
}

}  // namespace

bool ExceptionalActionReport::all_ok() const {
  if (!identity_at_zero) return false;
  return std::all_of(generators.begin(), generators.end(), [](const GeneratorCheck& g) { return g.ok(); });
}

ExceptionalActionReport exceptional_action_check(const ReducedLie& r, unsigned t) {
  if (!r.quotient_algebra) throw TheoremViolation("norm image is not an ideal of the fixed algebra");
  ExceptionalActionReport rep;
  rep.pair = r.pair;
  const auto& qa = *r.quotient_algebra;

  auto zero_gens = fixed_group_generators(r, 0);
  rep.identity_at_zero = true;
  for (const auto& [label, m] : zero_gens)
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (m(i, j) != (i == j ? 1u : 0u)) rep.identity_at_zero = false;

  for (const auto& [label, m] : fixed_group_generators(r, t)) {
    GeneratorCheck c;
    c.label = label;
    c.preserves_fixed = true;
    Subspace<PrimeField> cs = r.quotient->whole();
    for (const auto& v : r.fixed)
      if (!cs.contains(m.apply(v))) c.preserves_fixed = false;
    auto phi = c.preserves_fixed ? induced_on_quotient(r, m) : std::nullopt;
    c.preserves_norm = phi.has_value();
    if (phi) {
      c.invertible = phi->rank() == qa.dim();
      c.bracket_automorphism = true;
      for (std::size_t i = 0; i < qa.dim() && c.bracket_automorphism; ++i)
        for (std::size_t j = 0; j < qa.dim(); ++j) {
          Vec lhs = phi->apply(qa.bracket(qa.unit(i), qa.unit(j)));
          Vec rhs = qa.bracket(phi->apply(qa.unit(i)), phi->apply(qa.unit(j)));
          if (lhs != rhs) {
            c.bracket_automorphism = false;
            break;
          }
        }
      if (r.kernel_central && r.covering_surjective) c.lifts_to_cover = lifts_to_cover(r, *phi);
    }
    if (!c.preserves_norm && c.preserves_fixed)
      throw TheoremViolation("generator " + label + " does not normalize the norm ideal");
    if (!c.lifts_to_cover) rep.moves_beyond_cover = true;
    rep.generators.push_back(std::move(c));
  }
  return rep;
}

}  // namespace cova
