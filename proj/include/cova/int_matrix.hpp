#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace cova {

/// Sparse integer row: (column, value) pairs sorted by column, no zeros.
using SparseRow = std::vector<std::pair<std::size_t, mpz_class>>;

/// a + c*b
SparseRow row_axpy(const SparseRow& a, const mpz_class& c, const SparseRow& b);
mpz_class row_get(const SparseRow& r, std::size_t col);

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

  static IntMatrix from_rows(std::size_t cols, std::vector<SparseRow> rows);
  static IntMatrix from_dense(const std::vector<std::vector<long>>& d);
  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  const SparseRow& row(std::size_t i) const { return rows_[i]; }
  const std::vector<SparseRow>& row_list() const { return rows_; }
  mpz_class at(std::size_t i, std::size_t j) const { return row_get(rows_[i], j); }
  void set(std::size_t i, std::size_t j, const mpz_class& v);
  void append_row(SparseRow r);

  IntMatrix transpose() const;
  IntMatrix operator*(const IntMatrix& o) const;
  IntMatrix operator+(const IntMatrix& o) const;
  IntMatrix operator-(const IntMatrix& o) const;
  bool is_zero() const;
  std::vector<std::vector<mpz_class>> dense() const;

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.cols_ == b.cols_ && a.rows_ == b.rows_;
  }

 private:
  std::size_t cols_ = 0;
  std::vector<SparseRow> rows_;
};

SparseRow row_times(const SparseRow& r, const IntMatrix& m);

/// Row Hermite form H = U*M. Pivots are positive; entries above a pivot lie in
/// (-pivot, 0]; nonzero rows come first, then zero rows. The pivot in each
/// column is chosen as the leftmost-column row of smallest absolute value.
struct HermiteForm {
  IntMatrix h;
  IntMatrix u;
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
};

HermiteForm hnf(const IntMatrix& m, bool with_transform = true);
/// Nonzero rows of the Hermite form: a canonical basis of the row lattice.
IntMatrix hnf_basis(const IntMatrix& m);

/// Elementary divisors d1 | d2 | ..., padded with zeros to min(rows, cols).
std::vector<mpz_class> snf_diag(const IntMatrix& m);

/// Saturated basis (in Hermite form) of {x : x*M = 0}.
IntMatrix int_kernel(const IntMatrix& m);

/// Coordinates of v in a Hermite basis; nullopt when v is outside the lattice.
std::optional<std::vector<mpz_class>> lattice_coordinates(const IntMatrix& basis, const SparseRow& v);

IntMatrix lattice_sum(const IntMatrix& a, const IntMatrix& b);
IntMatrix lattice_intersection(const IntMatrix& a, const IntMatrix& b);
bool lattice_contains(const IntMatrix& lattice, const SparseRow& v);
bool lattice_contains(const IntMatrix& outer, const IntMatrix& inner);
bool lattice_equal(const IntMatrix& a, const IntMatrix& b);
/// [outer : inner]; throws std::invalid_argument unless inner is a finite-index sublattice.
mpz_class lattice_index(const IntMatrix& outer, const IntMatrix& inner);

mpz_class determinant(const IntMatrix& m);

}  // namespace cova
