#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cova/int_matrix.hpp"

namespace cova {

/// Lattice point in coordinates of a fixed basis (simple roots for root lattices).
using LatVec = std::vector<int>;
using Gram = std::vector<std::vector<long>>;

long inner(const Gram& g, const LatVec& a, const LatVec& b);
LatVec operator+(const LatVec& a, const LatVec& b);
LatVec operator-(const LatVec& a, const LatVec& b);
LatVec operator-(const LatVec& a);
LatVec scaled(const LatVec& a, int c);
bool is_zero(const LatVec& a);
std::string to_string(const LatVec& v);
SparseRow to_sparse(const LatVec& v);

/// All vectors x with x^T G x == norm, by exact Fincke-Pohst enumeration.
std::vector<LatVec> vectors_of_norm(const Gram& g, long norm);
/// All vectors with norm <= bound, grouped by increasing norm, lexicographic inside a norm.
std::vector<LatVec> vectors_up_to_norm(const Gram& g, long bound);
/// Theta series of an even lattice: entry k counts vectors of norm 2k, k <= kmax.
std::vector<long> theta_coefficients(const Gram& g, int kmax);

/// Simple roots of a root system for the lexicographic positive system.
std::vector<LatVec> simple_roots_of(const std::vector<LatVec>& roots);

/// ADE type of a root system given by its roots (norm-2 vectors closed under negation),
/// e.g. "A2", "A1+A1", "D4". Components are listed by decreasing rank then name.
std::string root_system_type(const std::vector<LatVec>& roots, const Gram& g);

class RootLattice {
 public:
  const std::string& name() const { return name_; }
  char family() const { return family_; }
  int rank() const { return rank_; }
  const Gram& gram() const { return gram_; }
  long inner(const LatVec& a, const LatVec& b) const { return cova::inner(gram_, a, b); }
  long norm(const LatVec& a) const { return inner(a, a); }

  /// Positive roots first (by height, ties broken so that alpha_1 precedes alpha_2),
  /// then the negatives in the same order.
  const std::vector<LatVec>& roots() const { return roots_; }
  std::size_t num_positive() const { return roots_.size() / 2; }
  std::optional<std::size_t> root_index(const LatVec& v) const;
  bool is_root(const LatVec& v) const { return root_index(v).has_value(); }
  LatVec simple_root(int i) const;
  static int height(const LatVec& v);

  friend RootLattice build_root_lattice(std::string_view name);

 private:
  std::string name_;
  char family_ = 'A';
  int rank_ = 0;
  Gram gram_;
  std::vector<LatVec> roots_;
  std::map<LatVec, std::size_t> index_;
};

/// A_n (n>=1), D_n (n>=3), E6, E7, E8 with Bourbaki numbering.
RootLattice build_root_lattice(std::string_view name);
Gram cartan_matrix(std::string_view name);

}  // namespace cova
