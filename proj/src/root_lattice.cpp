#include "cova/root_lattice.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cova {

long inner(const Gram& g, const LatVec& a, const LatVec& b) {
  long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    long t = 0;
    for (std::size_t j = 0; j < b.size(); ++j) t += g[i][j] * b[j];
    s += a[i] * t;
  }
  return s;
}

LatVec operator+(const LatVec& a, const LatVec& b) {
  LatVec c(a);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b[i];
  return c;
}

LatVec operator-(const LatVec& a, const LatVec& b) {
  LatVec c(a);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b[i];
  return c;
}

LatVec operator-(const LatVec& a) {
  LatVec c(a);
  for (auto& x : c) x = -x;
  return c;
}

LatVec scaled(const LatVec& a, int c) {
  LatVec r(a);
  for (auto& x : r) x *= c;
  return r;
}

bool is_zero(const LatVec& a) {
  return std::all_of(a.begin(), a.end(), [](int x) { return x == 0; });
}

std::string to_string(const LatVec& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

SparseRow to_sparse(const LatVec& v) {
  SparseRow r;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) r.emplace_back(i, v[i]);
  return r;
}

namespace {

void enumerate(const Gram& g, long bound, const std::function<void(const LatVec&, long)>& emit) {
  const std::size_t n = g.size();
  if (n == 0) {
    emit({}, 0);
    return;
  }
  // Q(x) = sum_i q[i][i] (x_i + sum_{j>i} q[i][j] x_j)^2
  std::vector<std::vector<mpq_class>> q(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < n; ++i) {
    mpq_class d = g[i][i];
    for (std::size_t k = 0; k < i; ++k) d -= q[k][k] * q[k][i] * q[k][i];
    if (sgn(d) <= 0) throw std::invalid_argument("Gram matrix is not positive definite");
    q[i][i] = d;
    for (std::size_t j = i + 1; j < n; ++j) {
      mpq_class s = g[i][j];
      for (std::size_t k = 0; k < i; ++k) s -= q[k][k] * q[k][i] * q[k][j];
      q[i][j] = s / d;
    }
  }
  LatVec x(n, 0);
  std::function<void(std::size_t, const mpq_class&)> rec = [&](std::size_t i, const mpq_class& left) {
    mpq_class c = 0;
    for (std::size_t j = i + 1; j < n; ++j) c -= q[i][j] * x[j];
    mpq_class room = left / q[i][i];
    mpz_class fl = room.get_num() / room.get_den();
    mpz_class s = sqrt(fl) + 1;
    mpz_class cf = c.get_num() / c.get_den();
    mpz_class lo = cf - s - 1, hi = cf + s + 1;
    for (mpz_class v = lo; v <= hi; ++v) {
      mpq_class d = mpq_class(v) - c;
      mpq_class used = q[i][i] * d * d;
      if (used > left) continue;
      x[i] = static_cast<int>(v.get_si());
      if (i == 0)
        emit(x, inner(g, x, x));
      else
        rec(i - 1, left - used);
    }
    x[i] = 0;
  };
  rec(n - 1, mpq_class(bound));
}

}  // namespace

std::vector<LatVec> vectors_of_norm(const Gram& g, long norm) {
  std::vector<LatVec> out;
  enumerate(g, norm, [&](const LatVec& v, long nv) {
    if (nv == norm) out.push_back(v);
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LatVec> vectors_up_to_norm(const Gram& g, long bound) {
  std::vector<std::pair<long, LatVec>> all;
  enumerate(g, bound, [&](const LatVec& v, long nv) { all.emplace_back(nv, v); });
  std::sort(all.begin(), all.end());
  std::vector<LatVec> out;
  out.reserve(all.size());
  for (auto& [nv, v] : all) out.push_back(std::move(v));
  return out;
}

std::vector<long> theta_coefficients(const Gram& g, int kmax) {
  std::vector<long> out(kmax + 1, 0);
  enumerate(g, 2L * kmax, [&](const LatVec&, long nv) {
    if (nv % 2 != 0) throw std::invalid_argument("lattice is not even");
    ++out[nv / 2];
  });
  return out;
}

namespace {

bool lex_positive(const LatVec& v) {
  for (int x : v)
    if (x != 0) return x > 0;
  return false;
}

std::string classify_component(const std::vector<std::vector<long>>& cartan, const std::vector<std::size_t>& nodes) {
  const std::size_t k = nodes.size();
  std::vector<int> deg(k, 0);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      if (a != b && cartan[nodes[a]][nodes[b]] != 0) {
        if (cartan[nodes[a]][nodes[b]] != -1) throw std::logic_error("root system is not simply laced");
        ++deg[a];
      }
  int branch = -1;
  for (std::size_t a = 0; a < k; ++a) {
    if (deg[a] > 3) throw std::logic_error("unexpected Dynkin diagram");
    if (deg[a] == 3) {
      if (branch != -1) throw std::logic_error("unexpected Dynkin diagram");
      branch = static_cast<int>(a);
    }
  }
  if (branch == -1) return "A" + std::to_string(k);
  std::vector<int> arms;
  for (std::size_t b = 0; b < k; ++b) {
    if (b == static_cast<std::size_t>(branch) || cartan[nodes[branch]][nodes[b]] == 0) continue;
    int len = 1;
    std::size_t prev = branch, cur = b;
    for (;;) {
      std::size_t next = k;
      for (std::size_t c = 0; c < k; ++c)
        if (c != prev && c != cur && cartan[nodes[cur]][nodes[c]] != 0) next = c;
      if (next == k) break;
      prev = cur;
      cur = next;
      ++len;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms[0] == 1 && arms[1] == 1) return "D" + std::to_string(k);
  if (arms[0] == 1 && arms[1] == 2 && arms[2] <= 4) return "E" + std::to_string(k);
  throw std::logic_error("unexpected Dynkin diagram");
}

}  // namespace

std::vector<LatVec> simple_roots_of(const std::vector<LatVec>& roots) {
  std::set<LatVec> pos;
  for (const auto& r : roots)
    if (lex_positive(r)) pos.insert(r);
  std::vector<LatVec> simple;
  for (const auto& r : pos) {
    bool decomposable = false;
    for (const auto& a : pos)
      if (pos.count(r - a)) {
        decomposable = true;
        break;
      }
    if (!decomposable) simple.push_back(r);
  }
  return simple;
}

std::string root_system_type(const std::vector<LatVec>& roots, const Gram& g) {
  const std::vector<LatVec> simple = simple_roots_of(roots);
  if (simple.empty()) return "0";
  const std::size_t n = simple.size();
  std::vector<std::vector<long>> cartan(n, std::vector<long>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) cartan[i][j] = inner(g, simple[i], simple[j]);
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] != -1) continue;
    std::vector<std::size_t> stack{s};
    comp[s] = ncomp;
    while (!stack.empty()) {
      std::size_t a = stack.back();
      stack.pop_back();
      for (std::size_t b = 0; b < n; ++b)
        if (comp[b] == -1 && cartan[a][b] != 0) {
          comp[b] = ncomp;
          stack.push_back(b);
        }
    }
    ++ncomp;
  }
  std::vector<std::pair<std::size_t, std::string>> parts;
  for (int c = 0; c < ncomp; ++c) {
    std::vector<std::size_t> nodes;
    for (std::size_t i = 0; i < n; ++i)
      if (comp[i] == c) nodes.push_back(i);
    std::string t = classify_component(cartan, nodes);
    if (t == "D3") t = "A3";
    parts.emplace_back(nodes.size(), t);
  }
  std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  std::string out;
  for (const auto& [sz, t] : parts) out += (out.empty() ? "" : "+") + t;
  return out;
}

namespace {

std::pair<char, int> parse_name(std::string_view name) {
  if (name.size() < 2) throw std::invalid_argument("unsupported root lattice: " + std::string(name));
  char f = name[0];
  int n = 0;
  for (std::size_t i = 1; i < name.size(); ++i) {
    if (name[i] < '0' || name[i] > '9') throw std::invalid_argument("unsupported root lattice: " + std::string(name));
    n = n * 10 + (name[i] - '0');
  }
  bool ok = (f == 'A' && n >= 1 && n <= 8) || (f == 'D' && n >= 3 && n <= 8) || (f == 'E' && n >= 6 && n <= 8);
  if (!ok) throw std::invalid_argument("unsupported root lattice: " + std::string(name));
  return {f, n};
}

}  // namespace

Gram cartan_matrix(std::string_view name) {
  auto [f, n] = parse_name(name);
  Gram g(n, std::vector<long>(n, 0));
  for (int i = 0; i < n; ++i) g[i][i] = 2;
  auto link = [&](int a, int b) { g[a - 1][b - 1] = g[b - 1][a - 1] = -1; };
  if (f == 'A') {
    for (int i = 1; i < n; ++i) link(i, i + 1);
  } else if (f == 'D') {
    for (int i = 1; i + 1 < n - 1; ++i) link(i, i + 1);
    link(n - 2, n - 1);
    link(n - 2, n);
  } else {
    link(1, 3);
    link(2, 4);
    for (int i = 3; i < n; ++i) link(i, i + 1);
  }
  return g;
}

RootLattice build_root_lattice(std::string_view name) {
  auto [f, n] = parse_name(name);
  RootLattice L;
  L.name_ = std::string(name);
  L.family_ = f;
  L.rank_ = n;
  L.gram_ = cartan_matrix(name);
  std::vector<LatVec> all = vectors_of_norm(L.gram_, 2);
  std::vector<LatVec> pos;
  for (const auto& v : all)
    if (lex_positive(v)) pos.push_back(v);
  std::sort(pos.begin(), pos.end(), [](const LatVec& a, const LatVec& b) {
    int ha = RootLattice::height(a), hb = RootLattice::height(b);
    if (ha != hb) return ha < hb;
    return a > b;
  });
  L.roots_ = pos;
  for (const auto& v : pos) L.roots_.push_back(-v);
  for (std::size_t i = 0; i < L.roots_.size(); ++i) L.index_[L.roots_[i]] = i;
  return L;
}

std::optional<std::size_t> RootLattice::root_index(const LatVec& v) const {
  auto it = index_.find(v);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

LatVec RootLattice::simple_root(int i) const {
  LatVec v(rank_, 0);
  v.at(i) = 1;
  return v;
}

int RootLattice::height(const LatVec& v) { return std::accumulate(v.begin(), v.end(), 0); }

}  // namespace cova
