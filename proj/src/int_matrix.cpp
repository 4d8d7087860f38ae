#include "cova/int_matrix.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace cova {

SparseRow row_axpy(const SparseRow& a, const mpz_class& c, const SparseRow& b) {
  if (c == 0) return a;
  SparseRow out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, c * b[j].second);
      ++j;
    } else {
      mpz_class v = a[i].second + c * b[j].second;
      if (v != 0) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

mpz_class row_get(const SparseRow& r, std::size_t col) {
  auto it = std::lower_bound(r.begin(), r.end(), col, [](const auto& e, std::size_t c) { return e.first < c; });
  if (it != r.end() && it->first == col) return it->second;
  return 0;
}

IntMatrix IntMatrix::from_rows(std::size_t cols, std::vector<SparseRow> rows) {
  IntMatrix m(0, cols);
  for (auto& r : rows) m.append_row(std::move(r));
  return m;
}

IntMatrix IntMatrix::from_dense(const std::vector<std::vector<long>>& d) {
  IntMatrix m(0, d.empty() ? 0 : d.front().size());
  for (const auto& r : d) {
    if (r.size() != m.cols_) throw std::invalid_argument("ragged dense matrix");
    SparseRow s;
    for (std::size_t j = 0; j < r.size(); ++j)
      if (r[j] != 0) s.emplace_back(j, r[j]);
    m.rows_.push_back(std::move(s));
  }
  return m;
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(0, n);
  for (std::size_t i = 0; i < n; ++i) m.rows_.push_back({{i, 1}});
  return m;
}

void IntMatrix::set(std::size_t i, std::size_t j, const mpz_class& v) {
  if (j >= cols_) throw std::out_of_range("IntMatrix::set column");
  auto& r = rows_.at(i);
  auto it = std::lower_bound(r.begin(), r.end(), j, [](const auto& e, std::size_t c) { return e.first < c; });
  if (it != r.end() && it->first == j) {
    if (v == 0)
      r.erase(it);
    else
      it->second = v;
  } else if (v != 0) {
    r.insert(it, {j, v});
  }
}

void IntMatrix::append_row(SparseRow r) {
  std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseRow clean;
  for (auto& e : r) {
    if (e.first >= cols_) throw std::out_of_range("IntMatrix::append_row column");
    if (!clean.empty() && clean.back().first == e.first)
      clean.back().second += e.second;
    else
      clean.push_back(std::move(e));
  }
  std::erase_if(clean, [](const auto& e) { return e.second == 0; });
  rows_.push_back(std::move(clean));
}

IntMatrix IntMatrix::transpose() const {
  std::vector<SparseRow> t(cols_);
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (const auto& [j, v] : rows_[i]) t[j].emplace_back(i, v);
  IntMatrix m(0, rows_.size());
  m.rows_ = std::move(t);
  return m;
}

SparseRow row_times(const SparseRow& r, const IntMatrix& m) {
  SparseRow acc;
  for (const auto& [k, v] : r) acc = row_axpy(acc, v, m.row(k));
  return acc;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows()) throw std::invalid_argument("IntMatrix product: shape mismatch");
  IntMatrix m(0, o.cols());
  for (const auto& r : rows_) m.rows_.push_back(row_times(r, o));
  return m;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
  if (cols_ != o.cols_ || rows() != o.rows()) throw std::invalid_argument("IntMatrix sum: shape mismatch");
  IntMatrix m(0, cols_);
  for (std::size_t i = 0; i < rows(); ++i) m.rows_.push_back(row_axpy(rows_[i], 1, o.rows_[i]));
  return m;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
  if (cols_ != o.cols_ || rows() != o.rows()) throw std::invalid_argument("IntMatrix difference: shape mismatch");
  IntMatrix m(0, cols_);
  for (std::size_t i = 0; i < rows(); ++i) m.rows_.push_back(row_axpy(rows_[i], -1, o.rows_[i]));
  return m;
}

bool IntMatrix::is_zero() const {
  return std::all_of(rows_.begin(), rows_.end(), [](const SparseRow& r) { return r.empty(); });
}

std::vector<std::vector<mpz_class>> IntMatrix::dense() const {
  std::vector<std::vector<mpz_class>> d(rows_.size(), std::vector<mpz_class>(cols_));
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (const auto& [j, v] : rows_[i]) d[i][j] = v;
  return d;
}

HermiteForm hnf(const IntMatrix& m, bool with_transform) {
  struct Work {
    SparseRow row;
    SparseRow u;
    std::size_t origin;
  };
  std::vector<Work> active;
  active.reserve(m.rows());
  std::vector<Work> zero_rows;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Work w{m.row(i), {}, i};
    if (with_transform) w.u = {{i, 1}};
    if (w.row.empty())
      zero_rows.push_back(std::move(w));
    else
      active.push_back(std::move(w));
  }

  std::vector<Work> pivots;
  while (!active.empty()) {
    std::size_t col = active.front().row.front().first;
    for (const auto& w : active) col = std::min(col, w.row.front().first);
    std::vector<std::size_t> cand;
    for (std::size_t i = 0; i < active.size(); ++i)
      if (active[i].row.front().first == col) cand.push_back(i);

    while (cand.size() > 1) {
      std::size_t best = 0;
      for (std::size_t k = 1; k < cand.size(); ++k)
        if (mpz_cmpabs(active[cand[k]].row.front().second.get_mpz_t(), active[cand[best]].row.front().second.get_mpz_t()) < 0) best = k;
      const std::size_t p = cand[best];
      const mpz_class lead = active[p].row.front().second;
      std::vector<std::size_t> next{p};
      for (std::size_t k = 0; k < cand.size(); ++k) {
        if (k == best) continue;
        Work& w = active[cand[k]];
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), w.row.front().second.get_mpz_t(), lead.get_mpz_t());
        w.row = row_axpy(w.row, -q, active[p].row);
        if (with_transform) w.u = row_axpy(w.u, -q, active[p].u);
        if (!w.row.empty() && w.row.front().first == col) next.push_back(cand[k]);
      }
      std::sort(next.begin(), next.end());
      cand = std::move(next);
    }

    Work piv = std::move(active[cand.front()]);
    if (piv.row.front().second < 0) {
      for (auto& e : piv.row) e.second = -e.second;
      for (auto& e : piv.u) e.second = -e.second;
    }
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(cand.front()));
    std::vector<Work> still;
    still.reserve(active.size());
    for (auto& w : active) {
      if (w.row.empty())
        zero_rows.push_back(std::move(w));
      else
        still.push_back(std::move(w));
    }
    active = std::move(still);
    pivots.push_back(std::move(piv));
  }

  for (std::size_t i = 0; i < pivots.size(); ++i) {
    const std::size_t pc = pivots[i].row.front().first;
    const mpz_class& pv = pivots[i].row.front().second;
    for (std::size_t k = 0; k < i; ++k) {
      mpz_class e = row_get(pivots[k].row, pc);
      if (e == 0) continue;
      mpz_class q;
      mpz_cdiv_q(q.get_mpz_t(), e.get_mpz_t(), pv.get_mpz_t());
      if (q == 0) continue;
      pivots[k].row = row_axpy(pivots[k].row, -q, pivots[i].row);
      if (with_transform) pivots[k].u = row_axpy(pivots[k].u, -q, pivots[i].u);
    }
  }

  std::sort(zero_rows.begin(), zero_rows.end(), [](const Work& a, const Work& b) { return a.origin < b.origin; });
  HermiteForm out;
  out.h = IntMatrix(0, m.cols());
  out.u = IntMatrix(0, with_transform ? m.rows() : 0);
  out.rank = pivots.size();
  for (auto& p : pivots) {
    out.pivot_cols.push_back(p.row.front().first);
    out.h.append_row(std::move(p.row));
    if (with_transform) out.u.append_row(std::move(p.u));
  }
  for (auto& z : zero_rows) {
    out.h.append_row({});
    if (with_transform) out.u.append_row(std::move(z.u));
  }
  return out;
}

IntMatrix hnf_basis(const IntMatrix& m) {
  HermiteForm f = hnf(m, false);
  IntMatrix b(0, m.cols());
  for (std::size_t i = 0; i < f.rank; ++i) b.append_row(f.h.row(i));
  return b;
}

std::vector<mpz_class> snf_diag(const IntMatrix& m) {
  auto a = m.dense();
  const std::size_t R = m.rows(), C = m.cols();
  const std::size_t n = std::min(R, C);
  std::vector<mpz_class> diag;
  for (std::size_t t = 0; t < n; ++t) {
    auto move_min_to_pivot = [&]() -> bool {
      std::size_t bi = R, bj = C;
      for (std::size_t i = t; i < R; ++i)
        for (std::size_t j = t; j < C; ++j)
          if (a[i][j] != 0 && (bi == R || mpz_cmpabs(a[i][j].get_mpz_t(), a[bi][bj].get_mpz_t()) < 0)) {
            bi = i;
            bj = j;
          }
      if (bi == R) return false;
      std::swap(a[t], a[bi]);
      for (auto& row : a) std::swap(row[t], row[bj]);
      return true;
    };
    if (!move_min_to_pivot()) break;
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < R; ++i) {
        if (a[i][t] == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
        for (std::size_t j = t; j < C; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        if (a[t][j] == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
        for (std::size_t i = t; i < R; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) {
        move_min_to_pivot();
        continue;
      }
      bool divides = true;
      for (std::size_t i = t + 1; i < R && divides; ++i)
        for (std::size_t j = t + 1; j < C; ++j)
          if (a[i][j] % a[t][t] != 0) {
            for (std::size_t k = t; k < C; ++k) a[t][k] += a[i][k];
            divides = false;
            break;
          }
      if (divides) break;
    }
    diag.push_back(abs(a[t][t]));
  }
  diag.resize(n, 0);
  return diag;
}

IntMatrix int_kernel(const IntMatrix& m) {
  HermiteForm f = hnf(m, true);
  IntMatrix k(0, m.rows());
  for (std::size_t i = f.rank; i < m.rows(); ++i) k.append_row(f.u.row(i));
  return hnf_basis(k);
}

std::optional<std::vector<mpz_class>> lattice_coordinates(const IntMatrix& basis, const SparseRow& v) {
  SparseRow rest = v;
  std::vector<mpz_class> coords(basis.rows());
  for (std::size_t i = 0; i < basis.rows(); ++i) {
    const auto& row = basis.row(i);
    if (row.empty()) continue;
    const std::size_t pc = row.front().first;
    mpz_class e = row_get(rest, pc);
    if (e == 0) continue;
    if (!mpz_divisible_p(e.get_mpz_t(), row.front().second.get_mpz_t())) return std::nullopt;
    coords[i] = e / row.front().second;
    rest = row_axpy(rest, -coords[i], row);
  }
  if (!rest.empty()) return std::nullopt;
  return coords;
}

namespace {

IntMatrix stack(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("lattice operation: ambient dimension mismatch");
  IntMatrix s(0, a.cols());
  for (const auto& r : a.row_list()) s.append_row(r);
  for (const auto& r : b.row_list()) s.append_row(r);
  return s;
}

}  // namespace

IntMatrix lattice_sum(const IntMatrix& a, const IntMatrix& b) { return hnf_basis(stack(a, b)); }

IntMatrix lattice_intersection(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix s = stack(a, b);
  IntMatrix k = int_kernel(s);
  IntMatrix out(0, a.cols());
  for (const auto& r : k.row_list()) {
    SparseRow left;
    for (const auto& [i, c] : r)
      if (i < a.rows()) left = row_axpy(left, c, a.row(i));
    out.append_row(std::move(left));
  }
  return hnf_basis(out);
}

bool lattice_contains(const IntMatrix& lattice, const SparseRow& v) {
  return lattice_coordinates(hnf_basis(lattice), v).has_value();
}

bool lattice_contains(const IntMatrix& outer, const IntMatrix& inner) {
  IntMatrix h = hnf_basis(outer);
  for (const auto& r : inner.row_list())
    if (!lattice_coordinates(h, r)) return false;
  return true;
}

bool lattice_equal(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("lattice_equal: ambient dimension mismatch");
  return hnf_basis(a) == hnf_basis(b);
}

mpz_class lattice_index(const IntMatrix& outer, const IntMatrix& inner) {
  IntMatrix ho = hnf_basis(outer), hi = hnf_basis(inner);
  if (ho.cols() != hi.cols()) throw std::invalid_argument("lattice_index: ambient dimension mismatch");
  if (ho.rows() != hi.rows()) throw std::invalid_argument("lattice_index: rank-deficient sublattice");
  if (!lattice_contains(ho, hi)) throw std::invalid_argument("lattice_index: not a sublattice");
  mpz_class po = 1, pi = 1;
  for (const auto& r : ho.row_list()) po *= r.front().second;
  for (const auto& r : hi.row_list()) pi *= r.front().second;
  return pi / po;
}

mpz_class determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
  auto a = m.dense();
  const std::size_t n = m.rows();
  // Bareiss fraction-free elimination.
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t s = k + 1;
      while (s < n && a[s][k] == 0) ++s;
      if (s == n) return 0;
      std::swap(a[k], a[s]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return n == 0 ? mpz_class(1) : sign * a[n - 1][n - 1];
}

}  // namespace cova
