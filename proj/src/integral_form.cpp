#include "cova/integral_form.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>

#include "cova/errors.hpp"

namespace cova {

WeightSpace::WeightSpace(const LatticeVA& V, int n)
    : n_(n), basis_(std::make_shared<const std::vector<FockMonomial>>(V.basis(n))) {
  mpz_fac_ui(denom_.get_mpz_t(), static_cast<unsigned long>(std::max(n, 0)));
  for (std::size_t i = 0; i < basis_->size(); ++i) index_.emplace((*basis_)[i], i);
}

std::size_t WeightSpace::column(const FockMonomial& m) const {
  auto it = index_.find(m);
  if (it == index_.end()) throw std::invalid_argument("monomial " + to_string(m) + " is not of weight " + std::to_string(n_));
  return it->second;
}

SparseRow WeightSpace::to_row(const VAElement& a) const {
  SparseRow r;
  for (const auto& [m, c] : a.terms) {
    mpq_class s = c * denom_;
    if (s.get_den() != 1) throw IntegralityError("coefficient " + c.get_str() + " has denominator beyond " + denom_.get_str());
    r.emplace_back(column(m), s.get_num());
  }
  std::sort(r.begin(), r.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return r;
}

SparseRow WeightSpace::integer_row(const VAElement& a) const {
  SparseRow r;
  for (const auto& [m, c] : a.terms) {
    if (c.get_den() != 1) throw IntegralityError("non-integral coefficient " + c.get_str() + " at " + to_string(m));
    r.emplace_back(column(m), c.get_num());
  }
  std::sort(r.begin(), r.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return r;
}

VAElement WeightSpace::from_row(const SparseRow& r) const {
  VAElement out;
  for (const auto& [c, v] : r) {
    mpq_class q(v, denom_);
    q.canonicalize();
    out.add((*basis_)[c], q);
  }
  return out;
}

IntegralForm::IntegralForm(const LatticeVA& V, std::optional<IntMatrix> sublattice) : V_(V), sub_(std::move(sublattice)) {
  const int r = V_.rank();
  if (sub_) {
    for (std::size_t i = 0; i < sub_->rows(); ++i) {
      LatVec v(r, 0);
      for (const auto& [c, x] : sub_->row(i)) v[c] = static_cast<int>(x.get_si());
      sub_rows_.push_back(v);
    }
  } else {
    for (int i = 0; i < r; ++i) {
      LatVec v(r, 0);
      v[i] = 1;
      sub_rows_.push_back(v);
    }
  }
}

const WeightSpace& IntegralForm::space(int n) const {
  auto it = spaces_.find(n);
  if (it == spaces_.end()) it = spaces_.emplace(n, std::make_unique<WeightSpace>(V_, n)).first;
  return *it->second;
}

const std::vector<VAElement>& IntegralForm::heisenberg_basis(int m) const {
  auto it = heis_.find(m);
  if (it != heis_.end()) return it->second;
  std::vector<VAElement> out;
  const LatVec zero(V_.rank(), 0);
  if (m == 0) {
    out.push_back(V_.vacuum());
    return heis_.emplace(m, std::move(out)).first->second;
  }
  std::vector<HeisMonomial> cols = heisenberg_monomials(V_.rank(), m);
  std::map<HeisMonomial, std::size_t> col_of;
  for (std::size_t i = 0; i < cols.size(); ++i) col_of.emplace(cols[i], i);
  mpz_class denom;
  mpz_fac_ui(denom.get_mpz_t(), static_cast<unsigned long>(m));

  std::vector<SparseRow> gens;
  const std::size_t k_sub = sub_rows_.size();
  for (int k = 1; k <= m; ++k) {
    const std::vector<VAElement>& lower = heisenberg_basis(m - k);
    // s_{g,k} over g = sum c_i b_i with c >= 0, |c| <= k: their span is that of all g in M
    std::vector<int> c(k_sub, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
      if (i == k_sub) {
        LatVec g(V_.rank(), 0);
        for (std::size_t j = 0; j < k_sub; ++j)
          if (c[j] != 0) g = g + scaled(sub_rows_[j], c[j]);
        if (is_zero(g)) return;
        VAElement s = V_.s_poly(g, k);
        for (const auto& b : lower) {
          std::map<std::size_t, mpq_class> acc;
          for (const auto& [m1, c1] : s.terms)
            for (const auto& [m2, c2] : b.terms) acc[col_of.at(heis_multiply(m1.factors, m2.factors))] += c1 * c2;
          SparseRow row;
          for (const auto& [col, v] : acc) {
            mpq_class sv = v * denom;
            if (sv.get_den() != 1) throw TheoremViolation("Schur product with denominator beyond m!");
            if (sgn(sv) != 0) row.emplace_back(col, sv.get_num());
          }
          if (!row.empty()) gens.push_back(std::move(row));
        }
        return;
      }
      for (int x = 0; x <= left; ++x) {
        c[i] = x;
        rec(i + 1, left - x);
      }
      c[i] = 0;
    };
    rec(0, k);
  }
  IntMatrix basis = hnf_basis(IntMatrix::from_rows(cols.size(), std::move(gens)));
  for (std::size_t i = 0; i < basis.rows(); ++i) {
    VAElement e;
    for (const auto& [col, v] : basis.row(i)) {
      mpq_class q(v, denom);
      q.canonicalize();
      e.add(FockMonomial{cols[col], zero}, q);
    }
    out.push_back(std::move(e));
  }
  return heis_.emplace(m, std::move(out)).first->second;
}

const GradedZModule& IntegralForm::module(int n) const {
  auto it = modules_.find(n);
  if (it != modules_.end()) return it->second;
  const WeightSpace& W = space(n);
  const Gram& g = V_.gram();
  std::vector<LatVec> pts = vectors_up_to_norm(g, 2L * n);
  std::sort(pts.begin(), pts.end());
  IntMatrix sub_basis;
  if (sub_) sub_basis = hnf_basis(*sub_);
  std::vector<SparseRow> rows;
  for (const auto& b : pts) {
    if (sub_ && !lattice_contains(sub_basis, to_sparse(b))) continue;
    const int m = n - static_cast<int>(inner(g, b, b) / 2);
    for (const auto& h : heisenberg_basis(m)) {
      VAElement e;
      for (const auto& [mono, c] : h.terms) e.add(FockMonomial{mono.factors, b}, c);
      rows.push_back(W.to_row(e));
    }
  }
  GradedZModule M;
  M.weight = n;
  M.ambient = W.shared();
  M.basis = hnf_basis(IntMatrix::from_rows(W.dim(), std::move(rows)));
  M.denominator = W.denominator();
  return modules_.emplace(n, std::move(M)).first->second;
}

std::optional<std::vector<mpz_class>> IntegralForm::coordinates(int n, const VAElement& a) const {
  SparseRow r;
  try {
    r = space(n).to_row(a);
  } catch (const IntegralityError&) {
    return std::nullopt;
  }
  return lattice_coordinates(module(n).basis, r);
}

bool IntegralForm::contains(int n, const VAElement& a) const { return coordinates(n, a).has_value(); }

VAElement IntegralForm::element(int n, std::size_t i) const { return space(n).from_row(module(n).basis.row(i)); }

std::vector<VAElement> IntegralForm::elements(int n) const {
  std::vector<VAElement> out;
  for (std::size_t i = 0; i < module(n).rank(); ++i) out.push_back(element(n, i));
  return out;
}

std::vector<GradedZModule> generated_subva(const IntegralForm& I, const std::vector<VAElement>& S, int wmax) {
  const LatticeVA& V = I.va();
  std::vector<GradedZModule> out;
  std::vector<std::vector<VAElement>> elems;
  for (int n = 0; n <= wmax; ++n) {
    const WeightSpace& W = I.space(n);
    std::vector<SparseRow> rows;
    if (n == 0) {
      rows.push_back(W.to_row(V.vacuum()));
    } else {
      for (int k = 1; k <= n; ++k)
        for (const auto& s : elems[n - k])
          for (const auto& a : S) {
            VAElement p = V.product(a, -k, s);
            if (!p.is_zero()) rows.push_back(W.to_row(p));
          }
    }
    GradedZModule M;
    M.weight = n;
    M.ambient = W.shared();
    M.basis = hnf_basis(IntMatrix::from_rows(W.dim(), std::move(rows)));
    M.denominator = W.denominator();
    std::vector<VAElement> here;
    for (std::size_t i = 0; i < M.rank(); ++i) here.push_back(W.from_row(M.basis.row(i)));
    elems.push_back(std::move(here));
    out.push_back(std::move(M));
  }
  return out;
}

IntMatrix image_lattice(const IntMatrix& basis, const IntMatrix& m) { return hnf_basis(basis * m); }

IntMatrix fixed_lattice(const IntMatrix& basis, const IntMatrix& m) {
  IntMatrix diff = basis * m - basis;
  IntMatrix ker = int_kernel(diff);
  if (ker.rows() == 0) return IntMatrix(0, basis.cols());
  return hnf_basis(ker * basis);
}

IntMatrix restrict_to_lattice(const IntMatrix& basis, const IntMatrix& m) {
  IntMatrix img = basis * m;
  IntMatrix out = IntMatrix::from_rows(basis.rows(), {});
  for (std::size_t i = 0; i < img.rows(); ++i) {
    auto c = lattice_coordinates(basis, img.row(i));
    if (!c) throw std::domain_error("restrict_to_lattice: the map does not preserve the lattice");
    SparseRow r;
    for (std::size_t j = 0; j < c->size(); ++j)
      if (sgn((*c)[j]) != 0) r.emplace_back(j, (*c)[j]);
    out.append_row(std::move(r));
  }
  return out;
}

}  // namespace cova
