#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cova/ring.hpp"

namespace cova {

/// F_p with residues in [0, p).
struct PrimeField {
  using value_type = std::uint32_t;
  std::uint32_t p;

  explicit PrimeField(std::uint32_t prime) : p(prime) {}
  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type add(value_type a, value_type b) const { return static_cast<value_type>((std::uint64_t{a} + b) % p); }
  value_type sub(value_type a, value_type b) const { return static_cast<value_type>((std::uint64_t{a} + p - b) % p); }
  value_type neg(value_type a) const { return a == 0 ? 0 : p - a; }
  value_type mul(value_type a, value_type b) const { return static_cast<value_type>(std::uint64_t{a} * b % p); }
  value_type inv(value_type a) const {
    if (a == 0) throw std::domain_error("PrimeField: inverse of zero");
    std::uint64_t r = 1, b = a, e = p - 2;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return static_cast<value_type>(r);
  }
  bool is_zero(value_type a) const { return a == 0; }
  value_type from_rational(const mpq_class& q) const { return static_cast<value_type>(reduce_mod(q, p)); }
  value_type from_long(long v) const {
    long r = v % static_cast<long>(p);
    return static_cast<value_type>(r < 0 ? r + p : r);
  }
  std::string to_string(value_type a) const { return std::to_string(a); }
};

struct RationalField {
  using value_type = mpq_class;
  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type inv(const value_type& a) const {
    if (a == 0) throw std::domain_error("RationalField: inverse of zero");
    return 1 / a;
  }
  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  value_type from_rational(const mpq_class& q) const { return q; }
  value_type from_long(long v) const { return v; }
  std::string to_string(const value_type& a) const { return a.get_str(); }
};

/// F_9 = F_3[i]; element a + b i encoded as a + 3 b.
struct F9Field {
  using value_type = std::uint8_t;
  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  static value_type make(unsigned a, unsigned b) { return static_cast<value_type>(a % 3 + 3 * (b % 3)); }
  value_type add(value_type x, value_type y) const { return make(x % 3 + y % 3, x / 3 + y / 3); }
  value_type sub(value_type x, value_type y) const { return make(x % 3 + 3 - y % 3, x / 3 + 3 - y / 3); }
  value_type neg(value_type x) const { return make(3 - x % 3, 3 - x / 3); }
  value_type mul(value_type x, value_type y) const {
    unsigned a = x % 3, b = x / 3, c = y % 3, d = y / 3;
    return make(a * c + 2 * b * d, a * d + b * c);
  }
  value_type inv(value_type x) const {
    if (x == 0) throw std::domain_error("F9Field: inverse of zero");
    for (value_type y = 1; y < 9; ++y)
      if (mul(x, y) == 1) return y;
    throw std::logic_error("F9Field: no inverse");
  }
  bool is_zero(value_type x) const { return x == 0; }
  value_type from_rational(const mpq_class& q) const { return make(static_cast<unsigned>(reduce_mod(q, 3)), 0); }
  value_type from_long(long v) const { return make(static_cast<unsigned>((v % 3 + 3) % 3), 0); }
  std::string to_string(value_type x) const { return std::to_string(x % 3) + "+" + std::to_string(x / 3) + "i"; }
};

template <class Field>
using FieldVector = std::vector<typename Field::value_type>;

template <class Field>
struct Echelon {
  std::vector<FieldVector<Field>> rows;  // reduced row echelon form, pivots equal to one
  std::vector<std::size_t> pivots;
};

/// Incrementally maintained reduced echelon basis of a subspace of F^n.
template <class Field>
class Subspace {
 public:
  using T = typename Field::value_type;
  Subspace(Field f, std::size_t ambient) : f_(std::move(f)), n_(ambient) {}

  std::size_t ambient() const { return n_; }
  std::size_t dim() const { return rows_.size(); }
  const std::vector<FieldVector<Field>>& basis() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return piv_; }
  const Field& field() const { return f_; }

  FieldVector<Field> reduce(FieldVector<Field> v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const T c = v[piv_[k]];
      if (f_.is_zero(c)) continue;
      for (std::size_t j = 0; j < n_; ++j)
        if (!f_.is_zero(rows_[k][j])) v[j] = f_.sub(v[j], f_.mul(c, rows_[k][j]));
    }
    return v;
  }

  bool contains(const FieldVector<Field>& v) const { return is_zero_vector(reduce(v)); }

  /// Adds v; returns true when the dimension grew.
  bool add(const FieldVector<Field>& v) {
    if (v.size() != n_) throw std::invalid_argument("Subspace::add: dimension mismatch");
    FieldVector<Field> r = reduce(v);
    std::size_t p = 0;
    while (p < n_ && f_.is_zero(r[p])) ++p;
    if (p == n_) return false;
    const T inv = f_.inv(r[p]);
    for (auto& x : r) x = f_.mul(x, inv);
    for (auto& row : rows_) {
      const T c = row[p];
      if (f_.is_zero(c)) continue;
      for (std::size_t j = 0; j < n_; ++j) row[j] = f_.sub(row[j], f_.mul(c, r[j]));
    }
    std::size_t pos = 0;
    while (pos < piv_.size() && piv_[pos] < p) ++pos;
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(r));
    piv_.insert(piv_.begin() + static_cast<std::ptrdiff_t>(pos), p);
    return true;
  }

  bool is_zero_vector(const FieldVector<Field>& v) const {
    for (const auto& x : v)
      if (!f_.is_zero(x)) return false;
    return true;
  }

 private:
  Field f_;
  std::size_t n_;
  std::vector<FieldVector<Field>> rows_;
  std::vector<std::size_t> piv_;
};

template <class Field>
class FieldMatrix {
 public:
  using T = typename Field::value_type;
  FieldMatrix(Field f, std::size_t rows, std::size_t cols)
      : f_(std::move(f)), r_(rows), c_(cols), a_(rows, FieldVector<Field>(cols, f_.zero())) {}

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i][j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i][j]; }
  const FieldVector<Field>& row(std::size_t i) const { return a_[i]; }
  const Field& field() const { return f_; }

  FieldMatrix operator*(const FieldMatrix& o) const {
    if (c_ != o.r_) throw std::invalid_argument("FieldMatrix product: shape mismatch");
    FieldMatrix m(f_, r_, o.c_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t k = 0; k < c_; ++k) {
        if (f_.is_zero(a_[i][k])) continue;
        for (std::size_t j = 0; j < o.c_; ++j) m.a_[i][j] = f_.add(m.a_[i][j], f_.mul(a_[i][k], o.a_[k][j]));
      }
    return m;
  }

  FieldVector<Field> apply(const FieldVector<Field>& v) const {
    FieldVector<Field> out(r_, f_.zero());
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j)
        if (!f_.is_zero(a_[i][j])) out[i] = f_.add(out[i], f_.mul(a_[i][j], v[j]));
    return out;
  }

  FieldMatrix transpose() const {
    FieldMatrix m(f_, c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) m.a_[j][i] = a_[i][j];
    return m;
  }

  Echelon<Field> rref() const {
    Subspace<Field> s(f_, c_);
    for (const auto& row : a_) s.add(row);
    return {s.basis(), s.pivots()};
  }

  std::size_t rank() const { return rref().rows.size(); }

  /// Basis of {x : M x = 0}, one vector per free column.
  std::vector<FieldVector<Field>> right_kernel() const {
    auto e = rref();
    std::vector<bool> is_piv(c_, false);
    for (auto p : e.pivots) is_piv[p] = true;
    std::vector<FieldVector<Field>> ker;
    for (std::size_t free = 0; free < c_; ++free) {
      if (is_piv[free]) continue;
      FieldVector<Field> x(c_, f_.zero());
      x[free] = f_.one();
      for (std::size_t k = 0; k < e.rows.size(); ++k) x[e.pivots[k]] = f_.neg(e.rows[k][free]);
      ker.push_back(std::move(x));
    }
    return ker;
  }

  friend bool operator==(const FieldMatrix& a, const FieldMatrix& b) { return a.a_ == b.a_; }

 private:
  Field f_;
  std::size_t r_, c_;
  std::vector<FieldVector<Field>> a_;
};

/// Quotient C/N of subspaces N ⊆ C ⊆ F^n with representatives chosen by
/// echelon extension of N by the C basis in order.
template <class Field>
class QuotientSpace {
 public:
  using T = typename Field::value_type;
  QuotientSpace(Field f, std::size_t ambient, const std::vector<FieldVector<Field>>& sub,
                const std::vector<FieldVector<Field>>& whole)
      : f_(f), n_(ambient), norm_(f, ambient), full_(f, ambient) {
    for (const auto& v : sub) norm_.add(v);
    for (const auto& v : sub) full_.add(v);
    for (const auto& v : whole)
      if (full_.add(v)) reps_.push_back(v);
    for (const auto& v : sub)
      if (!contains_whole(v)) throw std::invalid_argument("QuotientSpace: submodule not contained");
    aug_rows_.clear();
    build_augmented(sub);
  }

  std::size_t dim() const { return reps_.size(); }
  std::size_t sub_dim() const { return norm_.dim(); }
  std::size_t whole_dim() const { return full_.dim(); }
  const std::vector<FieldVector<Field>>& representatives() const { return reps_; }
  const Subspace<Field>& sub() const { return norm_; }
  const Subspace<Field>& whole() const { return full_; }
  bool contains_whole(const FieldVector<Field>& v) const { return full_.contains(v); }

  /// Coordinates of v + N in the representative basis; nullopt if v is not in C.
  std::optional<FieldVector<Field>> coords(FieldVector<Field> v) const {
    FieldVector<Field> out(reps_.size(), f_.zero());
    for (std::size_t k = 0; k < aug_rows_.size(); ++k) {
      const T c = v[aug_piv_[k]];
      if (f_.is_zero(c)) continue;
      for (std::size_t j = 0; j < n_; ++j)
        if (!f_.is_zero(aug_rows_[k][j])) v[j] = f_.sub(v[j], f_.mul(c, aug_rows_[k][j]));
      for (std::size_t j = 0; j < reps_.size(); ++j)
        if (!f_.is_zero(aug_tag_[k][j])) out[j] = f_.add(out[j], f_.mul(c, aug_tag_[k][j]));
    }
    for (const auto& x : v)
      if (!f_.is_zero(x)) return std::nullopt;
    return out;
  }

  FieldVector<Field> lift(const FieldVector<Field>& q) const {
    FieldVector<Field> v(n_, f_.zero());
    for (std::size_t k = 0; k < reps_.size(); ++k)
      if (!f_.is_zero(q[k]))
        for (std::size_t j = 0; j < n_; ++j) v[j] = f_.add(v[j], f_.mul(q[k], reps_[k][j]));
    return v;
  }

 private:
  void build_augmented(const std::vector<FieldVector<Field>>& sub) {
    const std::size_t q = reps_.size();
    auto insert = [&](FieldVector<Field> r, FieldVector<Field> tag) {
      for (std::size_t k = 0; k < aug_rows_.size(); ++k) {
        const T c = r[aug_piv_[k]];
        if (f_.is_zero(c)) continue;
        for (std::size_t j = 0; j < n_; ++j) r[j] = f_.sub(r[j], f_.mul(c, aug_rows_[k][j]));
        for (std::size_t j = 0; j < q; ++j) tag[j] = f_.sub(tag[j], f_.mul(c, aug_tag_[k][j]));
      }
      std::size_t p = 0;
      while (p < n_ && f_.is_zero(r[p])) ++p;
      if (p == n_) return;
      const T inv = f_.inv(r[p]);
      for (auto& x : r) x = f_.mul(x, inv);
      for (auto& x : tag) x = f_.mul(x, inv);
      for (std::size_t k = 0; k < aug_rows_.size(); ++k) {
        const T c = aug_rows_[k][p];
        if (f_.is_zero(c)) continue;
        for (std::size_t j = 0; j < n_; ++j) aug_rows_[k][j] = f_.sub(aug_rows_[k][j], f_.mul(c, r[j]));
        for (std::size_t j = 0; j < q; ++j) aug_tag_[k][j] = f_.sub(aug_tag_[k][j], f_.mul(c, tag[j]));
      }
      aug_rows_.push_back(std::move(r));
      aug_tag_.push_back(std::move(tag));
      aug_piv_.push_back(p);
    };
    for (const auto& v : sub) insert(v, FieldVector<Field>(q, f_.zero()));
    for (std::size_t k = 0; k < q; ++k) {
      FieldVector<Field> tag(q, f_.zero());
      tag[k] = f_.one();
      insert(reps_[k], std::move(tag));
    }
  }

  Field f_;
  std::size_t n_;
  Subspace<Field> norm_;
  Subspace<Field> full_;
  std::vector<FieldVector<Field>> reps_;
  std::vector<FieldVector<Field>> aug_rows_;
  std::vector<FieldVector<Field>> aug_tag_;
  std::vector<std::size_t> aug_piv_;
};

/// Kernel over a field-valued RingDescriptor of a matrix of Scalars; throws for non-fields.
std::vector<std::vector<Scalar>> field_kernel(const RingDescriptor& ring, const std::vector<std::vector<Scalar>>& m);

}  // namespace cova
