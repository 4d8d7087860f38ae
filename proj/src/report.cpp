#include "cova/report.hpp"

#include <chrono>
#include <fstream>
#include <map>
#include <random>
#include <stdexcept>

#include "cova/cocycle.hpp"
#include "cova/covering.hpp"
#include "cova/cube.hpp"
#include "cova/errors.hpp"
#include "cova/graph_aut.hpp"
#include "cova/integral_form.hpp"
#include "cova/lattice_va.hpp"
#include "cova/lie_algebra.hpp"
#include "cova/real_form.hpp"
#include "cova/reduced_lie.hpp"
#include "cova/root_lattice.hpp"
#include "cova/va_axioms.hpp"
#include "cova/va_morphism.hpp"

namespace cova {

namespace {

using Clock = std::chrono::steady_clock;

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

std::string ring_or(const Options& o, const std::string& fallback) { return o.ring.empty() ? fallback : o.ring; }

Report start(const std::string& command, const Options& o, const std::string& target, const std::string& ring,
             int wmax) {
  Report r;
  r.command = command;
  r.campaign["name"] = command;
  r.campaign["target"] = target;
  r.campaign["ring"] = ring;
  r.campaign["wmax"] = wmax;
  r.campaign["seed"] = o.seed;
  return r;
}

void finish(Report& r) {
  Json names = Json::array();
  for (const auto& c : r.checks) names.push_back(c.name);
  r.campaign["checks"] = names;
}

template <class F>
void add_check(Report& r, const Options& o, const std::string& name, F&& fill) {
  Check c;
  c.name = name;
  const auto t0 = Clock::now();
  fill(c);
  if (o.timings) c.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  if (!c.pass && c.witness.empty()) c.witness = c.details.empty() ? c.dims.dump() : c.details.dump();
  r.checks.push_back(std::move(c));
}

void product_check(Check& c, const ProductCheck& p) {
  c.pass = p.ok() && p.checked > 0;
  c.details["checked"] = p.checked;
  c.details["failures"] = p.failures;
  if (!p.ok()) c.witness = p.witness;
}

void axiom_check(Check& c, const AxiomReport& a, std::size_t wanted = 0) {
  c.pass = a.ok() && a.checked > 0 && a.checked >= wanted;
  c.details["checked"] = a.checked;
  c.details["rejected"] = a.rejected;
  c.details["failures"] = a.failures;
  if (!a.ok()) c.witness = a.witness;
}

long expected_root_count(const RootLattice& L) {
  const long n = L.rank();
  switch (L.family()) {
    case 'A': return n * (n + 1);
    case 'D': return 2 * n * (n - 1);
    default: return n == 6 ? 72 : n == 7 ? 126 : 240;
  }
}

Json lat_json(const LatVec& v) { return Json(v); }

int sign_pow(long e) { return e % 2 == 0 ? 1 : -1; }

bool is_prime_ring(const RingDescriptor& R) {
  return R.kind() == RingKind::PrimeField || R.kind() == RingKind::F9;
}

// Jacobi on basis triples with integer structure constants, reduced mod the characteristic.
bool jacobi_basis(const LieAlgebra& g, std::size_t i, std::size_t j, std::size_t k, unsigned long p) {
  std::map<std::size_t, long> acc;
  auto term = [&](std::size_t a, std::size_t b, std::size_t c) {
    for (const auto& t : g.bracket_basis(a, b))
      for (const auto& u : g.bracket_basis(t.index, c)) acc[u.index] += static_cast<long>(t.coef) * u.coef;
  };
  term(i, j, k);
  term(j, k, i);
  term(k, i, j);
  for (const auto& [idx, v] : acc)
    if (p == 0 ? v != 0 : v % static_cast<long>(p) != 0) return false;
  return true;
}

}  // namespace

bool Report::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  for (const auto& p : parts)
    if (!p.pass()) return false;
  return true;
}

Json Report::to_json() const {
  Json j;
  j["command"] = command;
  j["campaign"] = campaign;
  if (!result.empty()) j["result"] = result;
  Json cs = Json::array();
  for (const auto& c : checks) {
    Json x;
    x["name"] = c.name;
    x["pass"] = c.pass;
    if (!c.params.empty()) x["params"] = c.params;
    if (!c.dims.empty()) x["dims"] = c.dims;
    if (!c.details.empty()) x["details"] = c.details;
    if (!c.pass || !c.witness.empty()) x["witness"] = c.witness;
    if (c.elapsed_ms >= 0) x["elapsed_ms"] = c.elapsed_ms;
    cs.push_back(std::move(x));
  }
  j["checks"] = cs;
  if (!parts.empty()) {
    Json ps = Json::array();
    for (const auto& p : parts) ps.push_back(p.to_json());
    j["parts"] = ps;
  }
  j["pass"] = pass();
  return j;
}

std::pair<int, int> parse_range(const std::string& s) {
  const auto dots = s.find("..");
  try {
    std::size_t used = 0;
    if (dots == std::string::npos) {
      const int v = std::stoi(s, &used);
      require(used == s.size() && v >= 0, "bad range " + s);
      return {v, v};
    }
    const std::string a = s.substr(0, dots), b = s.substr(dots + 2);
    const int lo = std::stoi(a, &used);
    require(used == a.size(), "bad range " + s);
    const int hi = std::stoi(b, &used);
    require(used == b.size() && lo >= 0 && lo <= hi, "bad range " + s);
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw std::invalid_argument("bad range " + s);
  }
}

Report run_roots(const Options& o) {
  require(!o.type.empty(), "roots needs --type");
  RootLattice L = build_root_lattice(o.type);
  Report r = start("roots", o, L.name(), ring_or(o, "Z"), -1);
  r.result["type"] = L.name();
  r.result["rank"] = L.rank();
  r.result["root_count"] = L.roots().size();
  r.result["positive_roots"] = L.num_positive();
  r.result["gram"] = L.gram();
  Json simple = Json::array();
  for (int i = 0; i < L.rank(); ++i) simple.push_back(lat_json(L.simple_root(i)));
  r.result["simple_roots"] = simple;

  add_check(r, o, "root_count", [&](Check& c) {
    const long want = expected_root_count(L);
    c.dims["root_count"] = L.roots().size();
    c.dims["expected"] = want;
    c.pass = static_cast<long>(L.roots().size()) == want;
  });
  add_check(r, o, "root_norms", [&](Check& c) {
    c.pass = true;
    for (const auto& a : L.roots())
      if (L.norm(a) != 2) {
        c.pass = false;
        c.witness = to_string(a);
        break;
      }
  });
  add_check(r, o, "negation_closed", [&](Check& c) {
    c.pass = true;
    for (const auto& a : L.roots())
      if (!L.is_root(-a)) {
        c.pass = false;
        c.witness = to_string(a);
        break;
      }
  });
  add_check(r, o, "roots_are_sign_coherent", [&](Check& c) {
    c.pass = true;
    std::size_t positive = 0;
    for (const auto& a : L.roots()) {
      bool pos = false, neg = false;
      for (int x : a) {
        pos = pos || x > 0;
        neg = neg || x < 0;
      }
      if (pos == neg) {
        c.pass = false;
        c.witness = to_string(a);
        break;
      }
      if (pos) ++positive;
    }
    c.dims["positive"] = positive;
    c.pass = c.pass && positive == L.num_positive();
  });
  if (o.order > 0) {
    const GraphAut g = graph_automorphism(L, o.order);
    r.result["graph_automorphism"] = {{"order", g.order},
                                      {"perm", g.perm},
                                      {"fixed_rank", g.fixed_basis.rows()},
                                      {"fixed_type", g.fixed_type},
                                      {"folded_type", g.folded_type},
                                      {"dual_coxeter", g.dual_coxeter},
                                      {"central_charge", {g.central_charge.first.get_str(), g.central_charge.second.get_str()}}};
    add_check(r, o, "graph_automorphism", [&](Check& c) {
      c.pass = true;
      for (const auto& a : L.roots()) {
        if (!L.is_root(g.apply(a)) || g.apply_power(a, g.order) != a) {
          c.pass = false;
          c.witness = to_string(a);
          break;
        }
        for (const auto& b : L.roots())
          if (L.inner(g.apply(a), g.apply(b)) != L.inner(a, b)) {
            c.pass = false;
            c.witness = to_string(a) + " " + to_string(b);
            break;
          }
        if (!c.pass) break;
      }
    });
  }
  if (!o.dump.empty()) {
    std::ofstream out(o.dump);
    require(static_cast<bool>(out), "cannot write " + o.dump);
    for (const auto& a : L.roots()) {
      for (std::size_t i = 0; i < a.size(); ++i) out << (i ? " " : "") << a[i];
      out << "\n";
    }
  }
  finish(r);
  return r;
}

Report run_cocycle(const Options& o) {
  require(!o.type.empty(), "cocycle-check needs --type");
  RootLattice L = build_root_lattice(o.type);
  Report r = start("cocycle-check", o, L.name() + (o.order > 0 ? "," + std::to_string(o.order) : ""),
                   ring_or(o, "Z"), -1);
  const Cocycle eps(L.gram());
  const auto pts = vectors_up_to_norm(L.gram(), 4);
  r.result["vectors"] = pts.size();

  add_check(r, o, "cocycle_diagonal", [&](Check& c) {
    c.pass = true;
    for (const auto& a : pts)
      if (eps(a, a) != sign_pow(L.norm(a) / 2)) {
        c.pass = false;
        c.witness = to_string(a);
        break;
      }
    c.details["checked"] = pts.size();
  });
  add_check(r, o, "cocycle_commutator", [&](Check& c) {
    c.pass = true;
    std::size_t n = 0;
    for (const auto& a : L.roots()) {
      for (const auto& b : L.roots()) {
        ++n;
        if (eps(a, b) * eps(b, a) != sign_pow(L.inner(a, b))) {
          c.pass = false;
          c.witness = to_string(a) + " " + to_string(b);
          break;
        }
      }
      if (!c.pass) break;
    }
    c.details["checked"] = n;
  });
  add_check(r, o, "cocycle_bimultiplicative", [&](Check& c) {
    std::mt19937_64 rng(o.seed);
    const std::size_t n = o.samples ? o.samples : 2000;
    c.pass = true;
    for (std::size_t t = 0; t < n && c.pass; ++t) {
      const auto& a = pts[rng() % pts.size()];
      const auto& b = pts[rng() % pts.size()];
      const auto& d = pts[rng() % pts.size()];
      if (eps(a + b, d) != eps(a, d) * eps(b, d) || eps(a, b + d) != eps(a, b) * eps(a, d)) {
        c.pass = false;
        c.witness = to_string(a) + " " + to_string(b) + " " + to_string(d);
      }
    }
    c.details["checked"] = n;
  });
  if (o.order > 0) {
    const CocycleTable t = build_cocycle(L, graph_automorphism(L, o.order));
    const GraphAut& g = *t.gamma;
    const CocycleCorrection& k = *t.correction;
    r.result["chi"] = k.chi;
    add_check(r, o, "lift_correction", [&](Check& c) {
      c.pass = true;
      for (const auto& a : pts) {
        for (const auto& b : L.roots())
          if (k.eta(a + b) * eps(a, b) != k.eta(a) * k.eta(b) * eps(g.apply(a), g.apply(b))) {
            c.pass = false;
            c.witness = to_string(a) + " " + to_string(b);
            break;
          }
        if (!c.pass) break;
      }
      c.details["checked"] = pts.size() * L.roots().size();
    });
    add_check(r, o, "lift_order", [&](Check& c) {
      c.pass = k.orbit_products_trivial;
      for (const auto& a : pts) {
        int prod = 1;
        for (int j = 0; j < g.order; ++j) prod *= k.eta(g.apply_power(a, j));
        if (prod != 1) {
          c.pass = false;
          c.witness = to_string(a);
          break;
        }
      }
    });
    add_check(r, o, "lift_trivial_on_fixed", [&](Check& c) {
      c.pass = k.trivial_on_fixed;
      for (const auto& a : pts)
        if (g.apply(a) == a && k.eta(a) != 1) {
          c.pass = false;
          c.witness = to_string(a);
          break;
        }
    });
  }
  finish(r);
  return r;
}

namespace {

void reduced_lie_checks(Report& r, const Options& o, const ReducedLie& red, bool exceptional) {
  const auto& q = *red.quotient_algebra;
  r.result["pair"] = red.pair;
  r.result["ancestor"] = red.ancestor;
  r.result["dims"] = {{"fixed", red.dim_fixed()},
                      {"norm_ideal", red.dim_norm()},
                      {"quotient", red.dim_quotient()},
                      {"center", q.center().size()}};
  add_check(r, o, "reduced_dims", [&](Check& c) {
    c.dims = r.result["dims"];
    c.pass = red.norm_in_fixed && red.quotient && red.quotient->dim() == red.dim_quotient();
  });
  add_check(r, o, "norm_ideal", [&](Check& c) { c.pass = red.norm_is_ideal; });
  add_check(r, o, "quotient_lie", [&](Check& c) {
    const auto v = q.jacobi_violation();
    c.pass = q.is_antisymmetric() && !v;
    c.details["abelian"] = q.is_abelian();
    if (v) c.witness = std::to_string((*v)[0]) + " " + std::to_string((*v)[1]) + " " + std::to_string((*v)[2]);
  });
  if (!exceptional) return;
  add_check(r, o, "covering_map", [&](Check& c) {
    c.dims = {{"cover", red.cover.size()}, {"kernel", red.cover_kernel.size()}};
    c.pass = red.covering_surjective && red.kernel_central;
  });
  add_check(r, o, "norm_noncentral_proper", [&](Check& c) {
    const auto& f = *red.fixed_algebra;
    QuotientSpace<PrimeField> coords(red.field, red.algebra.dim(), {}, red.fixed);
    std::vector<FieldVector<PrimeField>> nc;
    for (const auto& v : red.norm) nc.push_back(*coords.coords(v));
    bool central = true;
    for (const auto& v : nc)
      for (std::size_t j = 0; j < f.dim() && central; ++j)
        for (auto x : f.bracket(v, f.unit(j)))
          if (x) central = false;
    c.details["ideal"] = f.is_ideal(nc);
    c.details["central"] = central;
    c.pass = f.is_ideal(nc) && !nc.empty() && nc.size() < f.dim() && !central;
  });
  const ExceptionalActionReport ex = exceptional_action_check(red);
  add_check(r, o, "generator_checks", [&](Check& c) {
    Json list = Json::array();
    for (const auto& g : ex.generators)
      list.push_back({{"label", g.label}, {"pass", g.ok()}, {"lifts_to_cover", g.lifts_to_cover}});
    c.details["generators"] = list;
    c.details["moves_beyond_cover"] = ex.moves_beyond_cover;
    c.pass = ex.all_ok() && ex.identity_at_zero;
    for (const auto& g : ex.generators)
      if (!g.ok() && c.witness.empty()) c.witness = g.label;
  });
}

void chevalley_checks(Report& r, const Options& o, const RootLattice& L, const RingDescriptor& R) {
  const LieAlgebra g(L, R);
  const unsigned long p = R.characteristic();
  const std::size_t n = g.dim();
  r.result["dim"] = n;
  add_check(r, o, "chevalley_dimension", [&](Check& c) {
    c.dims = {{"dim", n}, {"expected", L.rank() + expected_root_count(L)}};
    c.pass = static_cast<long>(n) == L.rank() + expected_root_count(L);
  });
  add_check(r, o, "chevalley_alternating", [&](Check& c) {
    c.pass = true;
    for (std::size_t i = 0; i < n && c.pass; ++i) {
      if (!g.bracket_basis(i, i).empty()) {
        c.pass = false;
        c.witness = g.label(i);
      }
      for (std::size_t j = 0; j < i && c.pass; ++j) {
        std::map<std::size_t, long> s;
        for (const auto& t : g.bracket_basis(i, j)) s[t.index] += t.coef;
        for (const auto& t : g.bracket_basis(j, i)) s[t.index] += t.coef;
        for (const auto& [k, v] : s)
          if (v != 0) {
            c.pass = false;
            c.witness = g.label(i) + " " + g.label(j);
          }
      }
    }
  });
  add_check(r, o, "chevalley_jacobi", [&](Check& c) {
    c.pass = true;
    std::size_t checked = 0;
    auto one = [&](std::size_t i, std::size_t j, std::size_t k) {
      ++checked;
      if (!jacobi_basis(g, i, j, k, p) && c.pass) {
        c.pass = false;
        c.witness = g.label(i) + " " + g.label(j) + " " + g.label(k);
      }
    };
    if (n <= 80) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          for (std::size_t k = j + 1; k < n; ++k) one(i, j, k);
      c.params["mode"] = "exhaustive";
    } else {
      std::mt19937_64 rng(o.seed);
      const std::size_t s = o.samples ? o.samples : 2000;
      for (std::size_t t = 0; t < s; ++t) one(rng() % n, rng() % n, rng() % n);
      c.params["mode"] = "sampled";
    }
    c.details["checked"] = checked;
  });
  add_check(r, o, "chevalley_root_strings", [&](Check& c) {
    c.pass = true;
    std::size_t checked = 0;
    const auto& roots = L.roots();
    for (std::size_t a = 0; a < roots.size() && c.pass; ++a)
      for (std::size_t b = 0; b < roots.size() && c.pass; ++b) {
        const LatVec s = roots[a] + roots[b];
        const auto& row = g.bracket_basis(g.e_index(a), g.e_index(b));
        long want = 0;
        if (L.is_root(s)) {
          long q = 0;
          while (L.is_root(roots[b] - scaled(roots[a], static_cast<int>(q + 1)))) ++q;
          want = q + 1;
        }
        long got = 0;
        bool stray = false;
        for (const auto& t : row) {
          if (L.is_root(s) && t.index == *g.e_index(s)) got = t.coef < 0 ? -t.coef : t.coef;
          else if (!is_zero(s)) stray = true;
        }
        if (is_zero(s)) continue;
        ++checked;
        if (got != want || stray) {
          c.pass = false;
          c.witness = "[" + g.label(g.e_index(a)) + ", " + g.label(g.e_index(b)) + "]";
        }
      }
    c.details["checked"] = checked;
  });
  add_check(r, o, "chevalley_generators", [&](Check& c) {
    std::mt19937_64 rng(o.seed + 1);
    const auto& roots = L.roots();
    std::vector<std::size_t> picks;
    if (roots.size() <= 24) {
      for (std::size_t k = 0; k < roots.size(); ++k) picks.push_back(k);
    } else {
      for (int k = 0; k < (n > 80 ? 2 : 8); ++k) picks.push_back(rng() % roots.size());
    }
    const std::size_t pairs = o.samples ? o.samples : 200;
    c.pass = true;
    std::size_t checked = 0;
    for (std::size_t k : picks) {
      const long t = static_cast<long>(rng() % 7) - 3;
      const ScalarMatrix m = chevalley_generator(g, roots[k]).at(Scalar(R, t));
      auto img = [&](std::size_t i) { return mat_apply(m, g.basis_vector(i)); };
      auto test = [&](std::size_t i, std::size_t j) {
        ++checked;
        if (mat_apply(m, g.bracket(g.basis_vector(i), g.basis_vector(j))) != g.bracket(img(i), img(j)) && c.pass) {
          c.pass = false;
          c.witness = "x_" + to_string(roots[k]) + "(" + std::to_string(t) + ") on " + g.label(i) + ", " + g.label(j);
        }
      };
      if (n * n <= pairs * 4) {
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) test(i, j);
      } else {
        for (std::size_t s = 0; s < pairs; ++s) test(rng() % n, rng() % n);
      }
    }
    c.details["generators"] = picks.size();
    c.details["checked"] = checked;
  });
}

}  // namespace

Report run_lie(const Options& o) {
  const RingDescriptor R = RingDescriptor::parse(ring_or(o, "Z"));
  if (!o.ancestor.empty()) {
    require(o.order > 0, "lie --ancestor needs --order");
    require(R.kind() == RingKind::PrimeField, "lie --ancestor needs a prime field ring");
    const std::string label = o.ancestor + "/" + std::to_string(o.order) + " over " + R.name();
    Report r = start("lie", o, o.ancestor + "," + std::to_string(o.order), R.name(), -1);
    const ReducedLie red = reduce_ancestor(o.ancestor, o.order, static_cast<unsigned>(R.characteristic()), label);
    reduced_lie_checks(r, o, red, false);
    finish(r);
    return r;
  }
  require(!o.type.empty(), "lie needs --type or --ancestor");
  const RootLattice L = build_root_lattice(o.type);
  if (R.kind() == RingKind::PrimeField) {
    try {
      exceptional_ancestor(L.name(), static_cast<int>(R.characteristic()));
      Report r = start("lie", o, L.name(), R.name(), -1);
      reduced_lie_checks(r, o, reduced_algebra(L.name(), static_cast<int>(R.characteristic())), true);
      finish(r);
      return r;
    } catch (const std::invalid_argument&) {
    }
  }
  Report r = start("lie", o, L.name(), R.name(), -1);
  chevalley_checks(r, o, L, R);
  finish(r);
  return r;
}

Report run_va(const Options& o) {
  require(!o.lattice.empty(), "va needs --lattice");
  const RootLattice L = build_root_lattice(o.lattice);
  const RingDescriptor R = RingDescriptor::parse(ring_or(o, "Z"));
  const bool modp = is_prime_ring(R);
  const int wmax = o.wmax >= 0 ? o.wmax : std::max(o.dims_hi, L.rank() <= 4 ? 5 : 2);
  require(o.dims_hi <= wmax, "--dims exceeds --wmax");
  Report r = start("va", o, L.name(), R.name(), wmax);
  r.result["computed_over"] = modp ? "F" + std::to_string(R.characteristic()) : "Z";
  const LatticeVA V(L.gram(), wmax);

  Json fock = Json::array(), series = Json::array();
  for (int n = o.dims_lo; n <= o.dims_hi; ++n) {
    fock.push_back(V.basis(n).size());
    series.push_back(graded_dimension(L.gram(), n).get_str());
  }
  r.result["weights"] = {o.dims_lo, o.dims_hi};
  r.result["dims"] = fock;
  add_check(r, o, "graded_dimensions", [&](Check& c) {
    c.dims = {{"fock", fock}, {"series", series}};
    c.pass = true;
    for (std::size_t k = 0; k < fock.size(); ++k)
      if (std::to_string(fock[k].get<std::size_t>()) != series[k].get<std::string>()) {
        c.pass = false;
        c.witness = "weight " + std::to_string(o.dims_lo + static_cast<int>(k));
      }
  });
  add_check(r, o, "vacuum_creation", [&](Check& c) { axiom_check(c, vacuum_creation_check(V, std::min(wmax, 3))); });
  if (wmax >= 2)
    add_check(r, o, "translation", [&](Check& c) {
      axiom_check(c, translation_check(V, std::min(wmax - 1, 2), std::min(wmax - 1, 1)));
    });
  const int wbasis = std::min(3, std::max(wmax / 2, 1));
  const std::size_t triples = o.samples ? o.samples : 200;
  std::optional<IntegralForm> I;
  if (modp || o.dims_lo <= 2) I.emplace(V);
  add_check(r, o, "borcherds", [&](Check& c) {
    c.params = {{"triples", triples}, {"basis_weight", wbasis}, {"modes", "[-3,3]"}};
    if (modp) {
      const ReducedForm Rf(*I, static_cast<std::uint32_t>(R.characteristic()));
      axiom_check(c, borcherds_check(Rf, o.seed, triples, wbasis), triples);
    } else {
      axiom_check(c, borcherds_check(V, o.seed, triples, wbasis), triples);
    }
  });
  if (I) {
    add_check(r, o, "integral_form_full_rank", [&](Check& c) {
      Json ranks = Json::array();
      c.pass = true;
      for (int n = 0; n <= std::min(o.dims_hi, 2); ++n) {
        ranks.push_back(I->module(n).rank());
        if (I->module(n).rank() != V.basis(n).size()) {
          c.pass = false;
          c.witness = "weight " + std::to_string(n);
        }
      }
      c.dims["ranks"] = ranks;
    });
  }
  if (wmax >= 2)
    add_check(r, o, "virasoro", [&](Check& c) {
      const long m = wmax >= 4 ? 2 : 1;
      const VirasoroReport v = virasoro_check(V, m, -m, std::min<int>(wmax - static_cast<int>(m), 2));
      c.params = {{"m", m}, {"n", -m}};
      c.details = {{"grading", v.grading}, {"derivative", v.derivative}, {"checked", v.checked},
                   {"failures", v.failures}, {"skipped", v.skipped}};
      c.pass = v.ok() && v.checked > 0;
      c.witness = v.witness;
    });
  add_check(r, o, "real_form_positive_definite", [&](Check& c) {
    const int top = std::min(wmax, L.rank() <= 2 ? 2 : 1);
    c.pass = true;
    Json sizes = Json::array();
    for (int n = 1; n <= top; ++n) {
      const auto B = tilde_basis(V, n);
      sizes.push_back(B.size());
      const auto minors = leading_principal_minors(tilde_gram(V, B));
      for (std::size_t k = 0; k < minors.size(); ++k)
        if (sgn(minors[k]) <= 0 && c.pass) {
          c.pass = false;
          c.witness = "weight " + std::to_string(n) + " minor " + std::to_string(k + 1) + " = " + minors[k].get_str();
        }
    }
    c.dims["basis"] = sizes;
  });
  if (!o.gram_csv.empty()) {
    std::ofstream out(o.gram_csv);
    require(static_cast<bool>(out), "cannot write " + o.gram_csv);
    out << "weight,i,j,value\n";
    for (int n = o.dims_lo; n <= o.dims_hi; ++n) {
      const auto B = V.basis(n);
      for (std::size_t i = 0; i < B.size(); ++i)
        for (std::size_t j = 0; j < B.size(); ++j) {
          const mpq_class v = V.form(B[i], B[j]);
          if (v != 0) out << n << "," << i << "," << j << "," << v.get_str() << "\n";
        }
    }
  }
  finish(r);
  return r;
}

Report run_covering(const Options& o) {
  require(!o.ancestor.empty() && o.order > 0, "covering needs --ancestor and --order");
  const RingDescriptor R = RingDescriptor::parse(ring_or(o, "Z"));
  require(R.kind() == RingKind::Int || is_prime_ring(R), "covering supports Z, F_p and F9");
  const int w = o.weight >= 0 ? o.weight : 2;
  Report r = start("covering", o, o.ancestor + "," + std::to_string(o.order), R.name(), w);
  const CoveringContext ctx(o.ancestor, o.order, w);
  r.result["pair"] = ctx.pair();
  for (int n = 0; n <= w; ++n)
    add_check(r, o, "covering_sub_plus_norm", [&](Check& c) {
      const CoveringReport k = check_covering(ctx, n);
      c.params["weight"] = n;
      c.dims = {{"ambient", k.ambient_dim}, {"iv", k.iv_rank},   {"fixed", k.fixed_rank},
                {"sub", k.sub_rank},       {"norm", k.norm_rank}, {"sum", k.sum_rank}};
      c.details = {{"sub_in_fixed", k.sub_in_fixed}, {"norm_in_fixed", k.norm_in_fixed}, {"equal", k.equal}};
      c.pass = k.ok();
      c.witness = k.witness;
    });
  if (!is_prime_ring(R)) {
    finish(r);
    return r;
  }
  const auto p = static_cast<std::uint32_t>(R.characteristic());
  if (static_cast<std::uint32_t>(o.order) % p != 0) {
    for (int n = 0; n <= w; ++n)
      add_check(r, o, "coprime_norm_equals_fixed", [&](Check& c) {
        const CollapseReport k = check_coprime_collapse(ctx, p, n);
        c.params = {{"weight", n}, {"p", p}};
        c.dims = {{"dim", k.dim}, {"fixed", k.fixed_dim}, {"norm", k.norm_dim}};
        c.pass = k.equal;
      });
    finish(r);
    return r;
  }
  require(static_cast<std::uint32_t>(o.order) == p, "reduction needs char equal to the order");
  const ReducedVA red = reduced_va(ctx, w, 1, o.seed, o.samples ? o.samples : 50);
  Json dims = Json::array();
  for (int n = 0; n <= w; ++n) {
    const TatePiece& t = red.tate.at(n);
    dims.push_back({{"weight", n}, {"dim", t.dim}, {"fixed", t.fixed_dim()}, {"norm", t.norm_dim()},
                    {"quotient", t.quotient_dim()}});
  }
  r.result["tate"] = dims;
  add_check(r, o, "reduced_tate_quotient", [&](Check& c) {
    c.dims["weights"] = dims;
    c.pass = red.tate.invariants_hold();
  });
  add_check(r, o, "reduced_products_well_defined", [&](Check& c) { product_check(c, red.well_defined); });
  add_check(r, o, "reduced_products_sampled", [&](Check& c) { product_check(c, red.sampled); });
  add_check(r, o, "reduced_covering_subalgebras", [&](Check& c) {
    c.pass = true;
    for (int n = 0; n <= w; ++n) {
      const bool ok = red.sub_covers[n] && red.generated_covers[n];
      if (!ok && c.pass) c.witness = "weight " + std::to_string(n);
      c.pass = c.pass && ok;
    }
    c.details = {{"sub_covers", red.sub_covers}, {"generated_covers", red.generated_covers},
                 {"sub_injective", red.sub_injective}};
  });
  add_check(r, o, "reduced_weight_one_lie", [&](Check& c) {
    c.dims = {{"quotient", red.quotient_dim(1)}, {"reduced_lie_quotient", red.lie_quotient_dim}};
    c.pass = red.lie_match;
  });
  add_check(r, o, "reduced_generators", [&](Check& c) {
    Json list = Json::array();
    c.pass = !red.generators.empty();
    for (const auto& g : red.generators) {
      const bool ok = g.preserves_fixed && g.preserves_norm && g.preserves_products;
      list.push_back({{"label", g.label}, {"pass", ok}});
      if (!ok && c.pass) c.witness = g.label;
      c.pass = c.pass && ok;
    }
    c.details["generators"] = list;
  });
  finish(r);
  return r;
}

namespace {

struct Cube {
  LatticeVA V;
  IntegralForm I;
  ReducedForm R;
  TensorCube cube;
  Cube(const Gram& g, int base, int top, bool diagonal) : V(g, base), I(V), R(I, 3), cube(R, top, diagonal) {}
};

void weight3_checks(Report& r, const Options& o, const RootLattice& L, const TensorCube& cube) {
  const RegradedVA V = regrade3(cube);
  const Weight3Lie W = weight3_lie(V);
  const std::size_t n = W.algebra.dim();
  add_check(r, o, "weight3_lie", [&](Check& c) {
    const std::size_t sample = n <= 80 ? 0 : (o.samples ? o.samples : 5000);
    const LieChecks k = check_weight3_lie(W, o.seed, sample);
    c.params["jacobi"] = sample ? "sampled" : "exhaustive";
    c.dims["dim"] = n;
    c.details = {{"antisymmetric", k.antisymmetric}, {"form_symmetric", k.form_symmetric},
                 {"form_invariant", k.form_invariant}, {"jacobi_triples", k.jacobi_triples},
                 {"jacobi_failures", k.jacobi_failures}};
    c.pass = k.ok() && k.jacobi_triples > 0;
  });
  add_check(r, o, "weight3_chevalley", [&](Check& c) {
    const LieAlgebra g(L, RingDescriptor::prime_field(3));
    const std::size_t bad = chevalley_mismatches(W, cube.base(), g);
    c.details["mismatched_pairs"] = bad;
    c.pass = bad == 0 && n == g.dim();
  });
}

}  // namespace

Report run_moonshine_desk(const Options& o) {
  const std::string name = o.lattice.empty() ? "A1" : o.lattice;
  require(ring_or(o, "F3") == "F3", "moonshine-desk works over F3");
  const RootLattice L = build_root_lattice(name);
  const bool small = L.rank() <= 2;
  const int base = o.wmax >= 0 ? o.wmax : (L.rank() == 1 ? 6 : 3);
  Report r = start("moonshine-desk", o, L.name(), "F3", small ? base : 1);
  std::vector<std::size_t> dims;
  for (int w = 0; w <= 6; ++w) dims.push_back(graded_dimension(L.gram(), w).get_ui());

  add_check(r, o, "cube_quotient_counts", [&](Check& c) {
    Json q = Json::array();
    c.pass = true;
    for (int n = 0; n <= 6; ++n) {
      const CubeCounts k = cube_tate_counts(dims, n);
      q.push_back(k.quotient);
      if (k.quotient != (n % 3 == 0 ? dims[n / 3] : 0) || k.fixed != k.norm + k.quotient) {
        c.pass = false;
        c.witness = "cube weight " + std::to_string(n);
      }
    }
    c.dims["quotient"] = q;
  });

  if (!small) {
    const Cube F(L.gram(), 1, 3, true);
    weight3_checks(r, o, L, F.cube);
    finish(r);
    return r;
  }
  require(base >= 3, "moonshine-desk needs --wmax >= 3");
  const Cube F(L.gram(), base, base, false);
  add_check(r, o, "eta_transversal", [&](Check& c) {
    const EtaTransversal t = eta_transversal(F.cube, o.seed, o.samples ? o.samples : 100);
    Json ws = Json::array();
    for (int n = 0; n <= base; ++n) {
      const TatePiece& p = t.tate.at(n);
      const CubeCounts k = cube_tate_counts(dims, n);
      const bool agree = p.dim == k.dim && p.fixed_dim() == k.fixed && p.norm_dim() == k.norm;
      ws.push_back({{"weight", n}, {"dim", p.dim}, {"fixed", p.fixed_dim()}, {"norm", p.norm_dim()},
                    {"quotient", p.quotient_dim()}, {"orbit_count_agrees", agree}});
      if (!agree && c.witness.empty()) c.witness = "cube weight " + std::to_string(n);
      if (!t.fixed_is_image_plus_norm[n] && c.witness.empty()) c.witness = "fixed != eta + norm at " + std::to_string(n);
    }
    c.dims["weights"] = ws;
    c.details = {{"eta_vacuum", t.eta_vacuum}, {"additivity_checked", t.additivity.checked}};
    if (!t.additivity.ok() && c.witness.empty()) c.witness = t.additivity.witness;
    c.pass = t.ok() && c.witness.empty();
  });
  add_check(r, o, "mode_support", [&](Check& c) {
    const ModeSupportReport m = mode_support_check(F.cube, 1);
    c.params["base_weight"] = 1;
    c.details = {{"checked", m.support.checked}, {"expansion_checked", m.expansion.checked},
                 {"nonzero_modes", m.nonzero_modes}};
    c.pass = m.support.ok() && m.expansion.ok() && m.support.checked > 0;
    c.witness = !m.support.ok() ? m.support.witness : m.expansion.witness;
  });
  add_check(r, o, "eta_homomorphism", [&](Check& c) {
    c.params["base_weight"] = base / 3;
    product_check(c, eta_homomorphism_check(F.cube, base / 3));
  });
  if (base >= 6) {
    weight3_checks(r, o, L, F.cube);
  } else {
    const TensorCube six(F.R, 6);
    weight3_checks(r, o, L, six);
  }
  add_check(r, o, "affine_commutator", [&](Check& c) {
    const Cube D(L.gram(), 5, 15, true);
    const RegradedVA V = regrade3(D.cube);
    c.params = {{"modes", "[-2,2]"}, {"state_weight", 1}};
    c.pass = true;
    bool central = false;
    std::size_t checked = 0, skipped = 0;
    for (long m = -2; m <= 2; ++m)
      for (long n = -2; n <= 2; ++n) {
        const AffineReport a = affine_commutator_check(V, m, n, 1);
        checked += a.identity.checked;
        skipped += a.skipped;
        central = central || a.central_term_seen;
        if (!a.identity.ok() && c.pass) {
          c.pass = false;
          c.witness = "m=" + std::to_string(m) + " n=" + std::to_string(n) + " " + a.identity.witness;
        }
      }
    c.details = {{"checked", checked}, {"skipped", skipped}, {"central_term_seen", central}};
    c.pass = c.pass && central && checked > 0;
  });
  finish(r);
  return r;
}

Report run_all(const Options& o) {
  Report r;
  r.command = "all";
  r.campaign["name"] = "all";
  r.campaign["seed"] = o.seed;
  auto with = [&](auto&& edit) {
    Options x;
    x.seed = o.seed;
    x.timings = o.timings;
    edit(x);
    return x;
  };
  r.parts.push_back(run_roots(with([](Options& x) { x.type = "E8"; })));
  r.parts.push_back(run_cocycle(with([](Options& x) {
    x.type = "D4";
    x.order = 3;
  })));
  r.parts.push_back(run_lie(with([](Options& x) {
    x.type = "A2";
    x.ring = "F3";
  })));
  r.parts.push_back(run_lie(with([](Options& x) { x.type = "D4"; })));
  r.parts.push_back(run_va(with([](Options& x) {
    x.lattice = "A2";
    x.dims_hi = 3;
  })));
  r.parts.push_back(run_va(with([](Options& x) {
    x.lattice = "A1";
    x.ring = "F3";
    x.dims_hi = 3;
  })));
  r.parts.push_back(run_covering(with([](Options& x) {
    x.ancestor = "D4";
    x.order = 3;
    x.weight = 2;
  })));
  r.parts.push_back(run_covering(with([](Options& x) {
    x.ancestor = "D4";
    x.order = 3;
    x.weight = 1;
    x.ring = "F3";
  })));
  r.parts.push_back(run_covering(with([](Options& x) {
    x.ancestor = "A3";
    x.order = 2;
    x.weight = 2;
    x.ring = "F3";
  })));
  r.parts.push_back(run_moonshine_desk(with([](Options& x) { x.lattice = "A1"; })));
  Json names = Json::array();
  for (const auto& p : r.parts) names.push_back(p.command + " " + p.campaign["target"].get<std::string>());
  r.campaign["parts"] = names;
  return r;
}

Report run(const Options& o) {
  if (o.command == "roots") return run_roots(o);
  if (o.command == "cocycle-check") return run_cocycle(o);
  if (o.command == "lie") return run_lie(o);
  if (o.command == "va") return run_va(o);
  if (o.command == "covering") return run_covering(o);
  if (o.command == "moonshine-desk") return run_moonshine_desk(o);
  if (o.command == "all") return run_all(o);
  throw std::invalid_argument("unknown command " + o.command);
}

}  // namespace cova
