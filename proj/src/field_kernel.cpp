#include <stdexcept>

#include "cova/field_matrix.hpp"

namespace cova {

namespace {

template <class Field, class In, class Out>
std::vector<std::vector<Scalar>> kernel_via(const Field& f, const std::vector<std::vector<Scalar>>& m, In in, Out out) {
  const std::size_t rows = m.size(), cols = rows ? m.front().size() : 0;
  FieldMatrix<Field> a(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a(i, j) = in(m[i][j]);
  std::vector<std::vector<Scalar>> ker;
  for (const auto& v : a.right_kernel()) {
    std::vector<Scalar> s;
    for (const auto& x : v) s.push_back(out(x));
    ker.push_back(std::move(s));
  }
  return ker;
}

}  // namespace

std::vector<std::vector<Scalar>> field_kernel(const RingDescriptor& ring, const std::vector<std::vector<Scalar>>& m) {
  if (!ring.is_field()) throw std::domain_error("field_kernel: " + ring.name() + " is not a field");
  for (const auto& r : m)
    for (const auto& x : r)
      if (!(x.ring() == ring)) throw std::invalid_argument("field_kernel: entry over another ring");
  switch (ring.kind()) {
    case RingKind::Rat:
      return kernel_via(RationalField{}, m, [](const Scalar& s) { return s.real(); },
                        [&](const mpq_class& x) { return Scalar(ring, x); });
    case RingKind::PrimeField: {
      PrimeField f(static_cast<std::uint32_t>(ring.characteristic()));
      return kernel_via(f, m, [&](const Scalar& s) { return f.from_rational(s.real()); },
                        [&](std::uint32_t x) { return Scalar(ring, static_cast<long>(x)); });
    }
    case RingKind::F9: {
      F9Field f;
      return kernel_via(
          f, m,
          [&](const Scalar& s) {
            return F9Field::make(static_cast<unsigned>(reduce_mod(s.real(), 3)),
                                 static_cast<unsigned>(reduce_mod(s.imag(), 3)));
          },
          [&](std::uint8_t x) { return Scalar(ring, mpq_class(x % 3), mpq_class(x / 3)); });
    }
    default:
      throw std::domain_error("field_kernel: unsupported field");
  }
}

}  // namespace cova
