#include "cova/cube.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "cova/errors.hpp"

namespace cova {

namespace {

using Vec = FieldVector<PrimeField>;

long mod3(long m) { return ((m % 3) + 3) % 3; }

Vec unit(std::size_t d, std::size_t i) {
  Vec v(d, 0);
  v[i] = 1;
  return v;
}

CubeKey rotate(const CubeKey& k) {
  return CubeKey{{k.w[2], k.w[0], k.w[1]}, {k.i[2], k.i[0], k.i[1]}};
}

std::array<int, 3> canonical_pattern(std::array<int, 3> w) {
  std::array<int, 3> best = w;
  for (int r = 0; r < 2; ++r) {
    w = {w[2], w[0], w[1]};
    best = std::min(best, w);
  }
  return best;
}

}  // namespace

std::string to_string(const CubeKey& k) {
  std::ostringstream os;
  for (int t = 0; t < 3; ++t) os << (t ? "(x)" : "") << "b" << k.w[t] << "." << k.i[t];
  return os.str();
}

void add_to(const PrimeField& f, CubeElement& acc, const CubeElement& x, std::uint32_t c) {
  if (c % f.p == 0) return;
  for (const auto& [k, v] : x) {
    auto [it, fresh] = acc.try_emplace(k, 0);
    it->second = f.add(it->second, f.mul(c, v));
    if (it->second == 0) acc.erase(it);
  }
}

CubeElement subtract(const PrimeField& f, const CubeElement& a, const CubeElement& b) {
  CubeElement out = a;
  add_to(f, out, b, f.neg(1));
  return out;
}

TensorCube::TensorCube(const ReducedForm& base, int wmax, bool diagonal_only)
    : R_(base), wmax_(wmax), diag_(diagonal_only) {}

std::vector<CubeKey> TensorCube::basis(int n) const {
  std::vector<CubeKey> out;
  for (int w0 = 0; w0 <= n; ++w0)
    for (int w1 = 0; w0 + w1 <= n; ++w1) {
      const int w2 = n - w0 - w1;
      const std::size_t d0 = R_.dim(w0), d1 = R_.dim(w1), d2 = R_.dim(w2);
      for (std::uint32_t a = 0; a < d0; ++a)
        for (std::uint32_t b = 0; b < d1; ++b)
          for (std::uint32_t c = 0; c < d2; ++c) out.push_back(CubeKey{{w0, w1, w2}, {a, b, c}});
    }
  return out;
}

CubeElement TensorCube::vacuum() const { return CubeElement{{CubeKey{{0, 0, 0}, {0, 0, 0}}, 1}}; }

CubeElement TensorCube::pure(int w0, const Vec& x, int w1, const Vec& y, int w2, const Vec& z) const {
  const PrimeField& f = field();
  CubeElement out;
  for (std::size_t a = 0; a < x.size(); ++a) {
    if (x[a] == 0) continue;
    for (std::size_t b = 0; b < y.size(); ++b) {
      if (y[b] == 0) continue;
      const auto ab = f.mul(x[a], y[b]);
      for (std::size_t c = 0; c < z.size(); ++c)
        if (z[c] != 0)
          out.emplace(CubeKey{{w0, w1, w2}, {static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b),
                                             static_cast<std::uint32_t>(c)}},
                      f.mul(ab, z[c]));
    }
  }
  return out;
}

CubeElement TensorCube::eta(int w, const Vec& x) const { return pure(w, x, w, x, w, x); }

CubeElement TensorCube::g(const CubeElement& a) const {
  CubeElement out;
  for (const auto& [k, v] : a) out.emplace(rotate(k), v);
  return out;
}

CubeElement TensorCube::nu(const CubeElement& a) const {
  CubeElement out = a, ga = g(a);
  add_to(field(), out, ga);
  add_to(field(), out, g(ga));
  return out;
}

bool TensorCube::is_fixed(const CubeElement& a) const { return g(a) == a; }

bool TensorCube::in_norm(const CubeElement& a) const {
  for (const auto& [k, v] : a)
    if (k.diagonal()) return false;
  return is_fixed(a);
}

const CubeElement& TensorCube::product(const CubeKey& a, long n, const CubeKey& b) const {
  auto key = std::make_tuple(a, n, b);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  CubeElement out;
  const long total = a.weight() + b.weight() - n - 1;
  if (total > wmax_) throw TruncationError("cube product exceeds weight " + std::to_string(wmax_));
  const PrimeField& f = field();
  if (total >= 0) {
    for (long o0 = 0; o0 <= total; ++o0)
      for (long o1 = 0; o0 + o1 <= total; ++o1) {
        const long o2 = total - o0 - o1;
        if (diag_ && !(o0 == o1 && o1 == o2)) continue;
        const std::array<long, 3> o{o0, o1, o2};
        std::array<Vec, 3> fac;
        bool zero = false;
        for (int t = 0; t < 3 && !zero; ++t) {
          const long mode = a.w[t] + b.w[t] - o[t] - 1;
          const auto& s = R_.structure(a.w[t], a.i[t], mode, b.w[t], b.i[t]);
          fac[t] = Vec(s.size(), 0);
          zero = true;
          for (std::size_t j = 0; j < s.size(); ++j) {
            fac[t][j] = f.from_rational(mpq_class(s[j]));
            if (fac[t][j] != 0) zero = false;
          }
        }
        if (zero) continue;
        add_to(f, out, pure(static_cast<int>(o0), fac[0], static_cast<int>(o1), fac[1], static_cast<int>(o2), fac[2]));
      }
  }
  return cache_.emplace(key, std::move(out)).first->second;
}

CubeElement TensorCube::product(const CubeElement& a, long n, const CubeElement& b) const {
  const PrimeField& f = field();
  CubeElement out;
  for (const auto& [ka, va] : a)
    for (const auto& [kb, vb] : b) add_to(f, out, product(ka, n, kb), f.mul(va, vb));
  return out;
}

CubeCounts cube_tate_counts(const std::vector<std::size_t>& base_dims, int n, std::uint32_t p) {
  CubeCounts c;
  std::size_t diagonal = 0;
  auto dim = [&](int w) -> std::size_t { return w < static_cast<int>(base_dims.size()) ? base_dims[w] : 0; };
  for (int w0 = 0; w0 <= n; ++w0)
    for (int w1 = 0; w0 + w1 <= n; ++w1) {
      const int w2 = n - w0 - w1;
      c.dim += dim(w0) * dim(w1) * dim(w2);
      if (w0 == w1 && w1 == w2) diagonal += dim(w0);
    }
  const std::size_t free_orbits = (c.dim - diagonal) / 3;
  c.fixed = free_orbits + diagonal;
  c.norm = p == 3 ? free_orbits : c.fixed;
  c.quotient = c.fixed - c.norm;
  return c;
}

bool EtaTransversal::ok() const {
  return eta_vacuum && additivity.ok() && tate.invariants_hold() &&
         std::all_of(fixed_is_image_plus_norm.begin(), fixed_is_image_plus_norm.end(), [](bool b) { return b; });
}

EtaTransversal eta_transversal(const TensorCube& cube, std::uint64_t seed, std::size_t pairs) {
  const PrimeField& f = cube.field();
  const ReducedForm& R = cube.base();
  EtaTransversal out;
  out.tate.p = f.p;
  std::vector<std::map<CubeKey, std::size_t>> index(cube.wmax() + 1);
  auto dense = [&](int n, const CubeElement& x) {
    Vec v(index[n].size(), 0);
    for (const auto& [k, c] : x) v[index[n].at(k)] = c;
    return v;
  };
  for (int n = 0; n <= cube.wmax(); ++n) {
    const auto keys = cube.basis(n);
    for (std::size_t i = 0; i < keys.size(); ++i) index[n].emplace(keys[i], i);
    const std::size_t d = keys.size();
    std::map<std::array<int, 3>, std::vector<std::size_t>> blocks;
    for (std::size_t i = 0; i < d; ++i) blocks[canonical_pattern(keys[i].w)].push_back(i);
    std::vector<Vec> fixed, norm;
    for (const auto& [pattern, members] : blocks) {
      const std::size_t b = members.size();
      std::map<CubeKey, std::size_t> local;
      for (std::size_t j = 0; j < b; ++j) local.emplace(keys[members[j]], j);
      FieldMatrix<PrimeField> G(f, b, b), Nu(f, b, b);
      for (std::size_t j = 0; j < b; ++j) G(j, local.at(rotate(keys[members[j]]))) = 1;
      FieldMatrix<PrimeField> G2 = G * G, Gm1 = G;
      for (std::size_t j = 0; j < b; ++j) {
        Gm1(j, j) = f.sub(Gm1(j, j), 1);
        for (std::size_t k = 0; k < b; ++k) Nu(j, k) = f.add(f.add(G(j, k), G2(j, k)), j == k ? 1 : 0);
      }
      auto embed = [&](const Vec& v) {
        Vec w(d, 0);
        for (std::size_t j = 0; j < b; ++j) w[members[j]] = v[j];
        return w;
      };
      for (const auto& v : Gm1.transpose().right_kernel()) fixed.push_back(embed(v));
      for (const auto& v : Nu.rref().rows) norm.push_back(embed(v));
    }
    std::vector<Vec> images;
    if (n % 3 == 0)
      for (std::size_t t = 0; t < R.dim(n / 3); ++t) images.push_back(dense(n, cube.eta(n / 3, unit(R.dim(n / 3), t))));
    std::vector<Vec> whole = images;
    whole.insert(whole.end(), fixed.begin(), fixed.end());
    QuotientSpace<PrimeField> q(f, d, norm, whole);
    bool covered = q.whole_dim() == fixed.size();
    Subspace<PrimeField> span(f, d);
    for (const auto& v : norm) span.add(v);
    for (const auto& v : images) span.add(v);
    covered = covered && span.dim() == fixed.size();
    out.fixed_is_image_plus_norm.push_back(covered);
    TatePiece t{n, d, std::move(fixed), std::move(norm), std::move(q), {}};
    if (covered && images.size() == t.quotient_dim()) t.section = images;
    out.tate.pieces.push_back(std::move(t));
  }
  const CubeElement eta1 = cube.eta(0, Vec{1});
  out.eta_vacuum = eta1 == cube.vacuum();

  std::mt19937_64 rng(seed);
  const int wtop = cube.wmax() / 3;
  for (std::size_t s = 0; s < pairs; ++s) {
    const int w = static_cast<int>(s % (wtop + 1));
    const std::size_t d = R.dim(w);
    Vec x(d), y(d);
    for (auto& c : x) c = static_cast<std::uint32_t>(rng() % f.p);
    for (auto& c : y) c = static_cast<std::uint32_t>(rng() % f.p);
    Vec xy(d);
    for (std::size_t i = 0; i < d; ++i) xy[i] = f.add(x[i], y[i]);
    CubeElement diff = subtract(f, subtract(f, cube.eta(w, xy), cube.eta(w, x)), cube.eta(w, y));
    out.additivity.record(out.tate.pieces[3 * w].quotient.sub().contains(dense(3 * w, diff)),
                          "eta cross terms outside the norm at weight " + std::to_string(w));
  }
  return out;
}

ModeSupportReport mode_support_check(const TensorCube& cube, int w) {
  if (cube.diagonal_only()) throw std::invalid_argument("mode_support_check needs the full cube product");
  const PrimeField& f = cube.field();
  const ReducedForm& R = cube.base();
  ModeSupportReport rep;
  for (int wa = 0; wa <= w; ++wa)
    for (int wb = 0; wb <= w; ++wb)
      for (std::size_t s = 0; s < R.dim(wa); ++s)
        for (std::size_t t = 0; t < R.dim(wb); ++t) {
          const Vec a = unit(R.dim(wa), s), b = unit(R.dim(wb), t);
          const CubeElement ea = cube.eta(wa, a), eb = cube.eta(wb, b);
          for (long m = 3 * (wa + wb) - 1 - cube.wmax(); m <= 3 * (wa + wb) - 1; ++m) {
            const CubeElement x = cube.product(ea, m, eb);
            std::ostringstream tag;
            tag << "b" << wa << "." << s << " mode " << m << " b" << wb << "." << t;
            if (mod3(m) != 2)
              rep.support.record(cube.in_norm(x), tag.str());
            else if (!cube.in_norm(x))
              ++rep.nonzero_modes;
            // factor products a_i b, i ranging over outputs of weight 0..(cube weight)
            const long total = 3 * (wa + wb) - m - 1;
            std::map<long, Vec> fac;
            for (long o = 0; o <= total; ++o) fac[wa + wb - o - 1] = R.product(wa, a, wa + wb - o - 1, wb, b);
            auto out_w = [&](long i) { return static_cast<int>(wa + wb - i - 1); };
            CubeElement expect;
            for (const auto& [i, vi] : fac)
              for (const auto& [j, vj] : fac) {
                const long k = m - 2 - i - j;
                auto it = fac.find(k);
                if (it == fac.end()) continue;
                std::array<long, 3> tr{i, j, k};
                if (i == j && j == k) {
                  add_to(f, expect, cube.pure(out_w(i), vi, out_w(j), vj, out_w(k), it->second));
                  continue;
                }
                std::array<long, 3> r1{k, i, j}, r2{j, k, i};
                if (tr > r1 || tr > r2) continue;
                add_to(f, expect, cube.nu(cube.pure(out_w(i), vi, out_w(j), vj, out_w(k), it->second)));
              }
            rep.expansion.record(expect == x, tag.str());
          }
        }
  return rep;
}

ProductCheck eta_homomorphism_check(const TensorCube& cube, int w) {
  const PrimeField& f = cube.field();
  const ReducedForm& R = cube.base();
  ProductCheck rep;
  for (int wa = 0; wa <= w; ++wa)
    for (int wb = 0; wb <= w; ++wb)
      for (std::size_t s = 0; s < R.dim(wa); ++s)
        for (std::size_t t = 0; t < R.dim(wb); ++t) {
          const Vec a = unit(R.dim(wa), s), b = unit(R.dim(wb), t);
          for (long l = wa + wb - 1 - cube.wmax() / 3; l <= wa + wb - 1; ++l) {
            const int o = static_cast<int>(wa + wb - l - 1);
            CubeElement x = cube.product(cube.eta(wa, a), 3 * l + 2, cube.eta(wb, b));
            CubeElement diff = subtract(f, x, cube.eta(o, R.product(wa, a, l, wb, b)));
            std::ostringstream tag;
            tag << "b" << wa << "." << s << " l=" << l << " b" << wb << "." << t;
            rep.record(cube.in_norm(diff), tag.str());
          }
        }
  return rep;
}

RegradedVA regrade3(const TensorCube& cube) { return RegradedVA(cube); }

CubeElement RegradedVA::lift(int w, const Vec& q) const {
  CubeElement out;
  for (std::size_t t = 0; t < q.size(); ++t) {
    const auto i = static_cast<std::uint32_t>(t);
    if (q[t] != 0) out.emplace(CubeKey{{w, w, w}, {i, i, i}}, q[t]);
  }
  return out;
}

RegradedVA::Vec RegradedVA::project(int w, const CubeElement& x) const {
  if (!cube_.is_fixed(x)) throw TheoremViolation("product of fixed points is not fixed by g");
  Vec out(dim(w), 0);
  for (const auto& [k, v] : x) {
    if (k.weight() != 3 * w) throw std::logic_error("RegradedVA::project: weight mismatch");
    if (k.diagonal()) out[k.i[0]] = v;
  }
  return out;
}

RegradedVA::Vec RegradedVA::mode(int wa, const Vec& a, long m, int wb, const Vec& b) const {
  const long n = 3 * (wa + wb) - m - 1;
  CubeElement x = cube_.product(lift(wa, a), m, lift(wb, b));
  if (n < 0 || n % 3 != 0) {
    if (!cube_.in_norm(x)) throw TheoremViolation("regraded support violation at mode " + std::to_string(m));
    return {};
  }
  return project(static_cast<int>(n / 3), x);
}

Weight3Lie weight3_lie(const RegradedVA& V) {
  const PrimeField& f = V.field();
  const std::size_t d = V.dim(1);
  if (V.dim(0) != 1) throw TheoremViolation("weight-0 space is not one-dimensional");
  FiniteLie<PrimeField> alg(f, d, [&](std::size_t i, std::size_t j) { return V.product(1, unit(d, i), 0, 1, unit(d, j)); });
  std::vector<std::vector<std::uint32_t>> form(d, std::vector<std::uint32_t>(d, 0));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) form[i][j] = V.product(1, unit(d, i), 1, 1, unit(d, j))[0];
  return Weight3Lie{std::move(alg), std::move(form)};
}

LieChecks check_weight3_lie(const Weight3Lie& L, std::uint64_t seed, std::size_t sample) {
  const auto& g = L.algebra;
  const PrimeField& f = g.field();
  const std::size_t d = g.dim();
  LieChecks c;
  c.antisymmetric = g.is_antisymmetric();
  c.form_symmetric = true;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (L.form[i][j] != L.form[j][i]) c.form_symmetric = false;
  c.form_invariant = true;
  for (std::size_t i = 0; i < d && c.form_invariant; ++i)
    for (std::size_t j = 0; j < d && c.form_invariant; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        std::uint32_t lhs = 0, rhs = 0;
        for (const auto& [l, v] : g.basis_bracket(j, k)) lhs = f.add(lhs, f.mul(v, L.form[i][l]));
        for (const auto& [l, v] : g.basis_bracket(i, j)) rhs = f.add(rhs, f.mul(v, L.form[l][k]));
        if (lhs != rhs) {
          c.form_invariant = false;
          break;
        }
      }
  // sparse [[e_i, e_j], e_k]
  auto double_bracket = [&](std::size_t i, std::size_t j, std::size_t k, Vec& acc) {
    for (const auto& [l, v] : g.basis_bracket(i, j))
      for (const auto& [r, u] : g.basis_bracket(l, k)) acc[r] = f.add(acc[r], f.mul(v, u));
  };
  auto jacobi = [&](std::size_t i, std::size_t j, std::size_t k) {
    Vec acc(d, 0);
    double_bracket(i, j, k, acc);
    double_bracket(j, k, i, acc);
    double_bracket(k, i, j, acc);
    ++c.jacobi_triples;
    if (std::any_of(acc.begin(), acc.end(), [](auto x) { return x != 0; })) ++c.jacobi_failures;
  };
  if (sample == 0) {
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j)
        for (std::size_t k = j + 1; k < d; ++k) jacobi(i, j, k);
  } else {
    std::mt19937_64 rng(seed);
    for (std::size_t s = 0; s < sample; ++s) jacobi(rng() % d, rng() % d, rng() % d);
  }
  return c;
}

std::vector<FieldVector<PrimeField>> chevalley_in_weight_one(const ReducedForm& R, const LieAlgebra& g) {
  const LatticeVA& V = R.form().va();
  const RootLattice& L = g.lattice();
  std::vector<Vec> out;
  for (std::size_t i = 0; i < g.dim(); ++i) {
    VAElement x = i < g.rank() ? V.heis(L.simple_root(static_cast<int>(i))) : V.exp(g.weight(i));
    out.push_back(R.reduce(1, x));
  }
  return out;
}

std::size_t chevalley_mismatches(const Weight3Lie& L, const ReducedForm& R, const LieAlgebra& g) {
  const auto P = chevalley_in_weight_one(R, g);
  const PrimeField& f = R.field();
  const auto& alg = L.algebra;
  const std::size_t d = alg.dim();
  std::vector<std::vector<std::pair<std::size_t, std::uint32_t>>> sparse(P.size());
  for (std::size_t i = 0; i < P.size(); ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (P[i][j] != 0) sparse[i].emplace_back(j, P[i][j]);
  std::size_t bad = 0;
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = 0; j < g.dim(); ++j) {
      Vec lhs(d, 0), rhs(d, 0);
      for (const auto& [a, x] : sparse[i])
        for (const auto& [b, y] : sparse[j])
          for (const auto& [c, z] : alg.basis_bracket(a, b)) lhs[c] = f.add(lhs[c], f.mul(f.mul(x, y), z));
      for (const auto& t : g.bracket_basis(i, j))
        for (const auto& [c, z] : sparse[t.index]) rhs[c] = f.add(rhs[c], f.mul(f.from_long(t.coef), z));
      if (lhs != rhs) ++bad;
    }
  return bad;
}

AffineReport affine_commutator_check(const RegradedVA& V, long m, long n, int wc) {
  const PrimeField& f = V.field();
  AffineReport rep;
  rep.m = m;
  rep.n = n;
  const std::size_t d1 = V.dim(1);
  struct Graded {
    long w;
    Vec v;
  };
  // x_{l,new} acting on y; weight w_x + w_y - l - 1
  auto act = [&](long wx, const Vec& x, long l, const Graded& y) -> Graded {
    const long w = wx + y.w - l - 1;
    if (w < 0 || y.v.empty()) return {w, {}};
    return {w, V.product(static_cast<int>(wx), x, l, static_cast<int>(y.w), y.v)};
  };
  auto sub = [&](Vec a, const Vec& b) {
    if (a.empty()) a.assign(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = f.sub(a[i], b[i]);
    return a;
  };
  auto add = [&](Vec a, const Vec& b, std::uint32_t c) {
    if (a.empty()) a.assign(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = f.add(a[i], f.mul(c, b[i]));
    return a;
  };
  auto is_zero = [](const Vec& v) { return std::all_of(v.begin(), v.end(), [](auto x) { return x == 0; }); };
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t j = 0; j < d1; ++j) {
      const Vec a = unit(d1, i), b = unit(d1, j);
      Vec ab;
      std::uint32_t form = 0;
      try {
        ab = V.product(1, a, 0, 1, b);
        form = V.product(1, a, 1, 1, b)[0];
      } catch (const TruncationError&) {
        ++rep.skipped;
        continue;
      }
      for (int w = 0; w <= wc; ++w)
        for (std::size_t s = 0; s < V.dim(w); ++s) {
          const Graded c{w, unit(V.dim(w), s)};
          try {
            const long wout = w - m - n;
            if (wout < 0) {
              rep.identity.record(true, "");
              continue;
            }
            Vec lhs = sub(act(1, a, m, act(1, b, n, c)).v, act(1, b, n, act(1, a, m, c)).v);
            Vec rhs = act(1, ab, m + n, c).v;
            const std::uint32_t central = f.mul(f.from_long(m), form);
            if (m + n == 0 && central != 0) {
              rhs = add(rhs, c.v, central);
              rep.central_term_seen = true;
            }
            if (lhs.empty()) lhs.assign(V.dim(static_cast<int>(wout)), 0);
            if (rhs.empty()) rhs.assign(V.dim(static_cast<int>(wout)), 0);
            std::ostringstream tag;
            tag << "a=" << i << " b=" << j << " c=b" << w << "." << s;
            rep.identity.record(is_zero(sub(lhs, rhs)), tag.str());
          } catch (const TruncationError&) {
            ++rep.skipped;
          }
        }
    }
  return rep;
}

std::uint32_t binomial_mod(long n, long k, std::uint32_t p) {
  if (k < 0) return 0;
  mpz_class num = 1, den = 1;
  for (long i = 0; i < k; ++i) {
    num *= n - i;
    den *= i + 1;
  }
  mpz_class q = num / den, r;
  mpz_fdiv_r_ui(r.get_mpz_t(), q.get_mpz_t(), p);
  return static_cast<std::uint32_t>(r.get_ui());
}

}  // namespace cova
