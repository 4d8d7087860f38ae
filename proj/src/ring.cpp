#include "cova/ring.hpp"

#include <stdexcept>

#include "cova/errors.hpp"

namespace cova {

namespace {

bool is_power_of_two(const mpz_class& d) {
  return d > 0 && mpz_popcount(d.get_mpz_t()) == 1;
}

}  // namespace

bool is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

RingDescriptor RingDescriptor::prime_field(unsigned long p) {
  if (!is_prime(p)) throw std::invalid_argument("prime field needs a prime, got " + std::to_string(p));
  return {RingKind::PrimeField, p};
}

RingDescriptor RingDescriptor::parse(std::string_view name) {
  if (name == "Z") return integers();
  if (name == "Q") return rationals();
  if (name == "Z12") return int_half();
  if (name == "GZ12") return gauss_half();
  if (name == "F9") return f9();
  if (name.size() > 1 && name[0] == 'F') {
    unsigned long p = 0;
    for (char c : name.substr(1)) {
      if (c < '0' || c > '9') throw std::invalid_argument("unknown ring " + std::string(name));
      p = p * 10 + static_cast<unsigned long>(c - '0');
    }
    return prime_field(p);
  }
  throw std::invalid_argument("unknown ring " + std::string(name));
}

std::string RingDescriptor::name() const {
  switch (kind_) {
    case RingKind::Int: return "Z";
    case RingKind::Rat: return "Q";
    case RingKind::PrimeField: return "F" + std::to_string(p_);
    case RingKind::IntHalf: return "Z12";
    case RingKind::GaussHalf: return "GZ12";
    case RingKind::F9: return "F9";
  }
  return "?";
}

unsigned long reduce_mod(const mpq_class& q, unsigned long p) {
  mpz_class mod = p;
  mpz_class num = q.get_num() % mod;
  if (num < 0) num += mod;
  mpz_class den = q.get_den() % mod;
  mpz_class inv;
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t()) == 0)
    throw std::domain_error("denominator not invertible mod " + std::to_string(p));
  mpz_class r = (num * inv) % mod;
  return r.get_ui();
}

Scalar::Scalar(RingDescriptor ring, long value) : ring_(ring), re_(value), im_(0) { normalize(); }

Scalar::Scalar(RingDescriptor ring, const mpq_class& re, const mpq_class& im)
    : ring_(ring), re_(re), im_(im) {
  re_.canonicalize();
  im_.canonicalize();
  normalize();
}

Scalar Scalar::imaginary_unit(RingDescriptor r) {
  if (!r.has_conjugation()) throw std::domain_error("ring " + r.name() + " has no sqrt(-1)");
  return {r, 0, 1};
}

void Scalar::normalize() {
  switch (ring_.kind()) {
    case RingKind::Int:
      if (im_ != 0 || re_.get_den() != 1) throw std::domain_error("value not in Z");
      break;
    case RingKind::Rat:
      if (im_ != 0) throw std::domain_error("value not in Q");
      break;
    case RingKind::PrimeField:
      if (im_ != 0) throw std::domain_error("value not in F_p");
      re_ = reduce_mod(re_, ring_.characteristic());
      break;
    case RingKind::IntHalf:
      if (im_ != 0 || !is_power_of_two(re_.get_den())) throw std::domain_error("value not in Z[1/2]");
      break;
    case RingKind::GaussHalf:
      if (!is_power_of_two(re_.get_den()) || !is_power_of_two(im_.get_den()))
        throw std::domain_error("value not in Z[1/2,i]");
      break;
    case RingKind::F9:
      re_ = reduce_mod(re_, 3);
      im_ = reduce_mod(im_, 3);
      break;
  }
}

void Scalar::require_same(const Scalar& o) const {
  if (!(ring_ == o.ring_)) throw std::invalid_argument("ring mismatch: " + ring_.name() + " vs " + o.ring_.name());
}

Scalar Scalar::operator+(const Scalar& o) const {
  require_same(o);
  return {ring_, re_ + o.re_, im_ + o.im_};
}

Scalar Scalar::operator-(const Scalar& o) const {
  require_same(o);
  return {ring_, re_ - o.re_, im_ - o.im_};
}

Scalar Scalar::operator*(const Scalar& o) const {
  require_same(o);
  return {ring_, re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_};
}

Scalar Scalar::operator-() const { return {ring_, -re_, -im_}; }

bool Scalar::is_unit() const {
  switch (ring_.kind()) {
    case RingKind::Int: return abs(re_) == 1;
    case RingKind::Rat:
    case RingKind::PrimeField:
    case RingKind::F9: return !is_zero();
    case RingKind::IntHalf: return !is_zero() && is_power_of_two(abs(re_.get_num()));
    case RingKind::GaussHalf: {
      if (is_zero()) return false;
      mpq_class n = re_ * re_ + im_ * im_;
      return is_power_of_two(n.get_num());
    }
  }
  return false;
}

Scalar Scalar::inverse() const {
  if (!is_unit()) throw std::domain_error(to_string() + " is not a unit in " + ring_.name());
  if (ring_.kind() == RingKind::PrimeField || ring_.kind() == RingKind::F9) {
    unsigned long p = ring_.characteristic();
    unsigned long n = reduce_mod(re_ * re_ + im_ * im_, p);
    mpz_class inv, nz = n, pz = p;
    mpz_invert(inv.get_mpz_t(), nz.get_mpz_t(), pz.get_mpz_t());
    return {ring_, re_ * inv, -im_ * inv};
  }
  mpq_class n = re_ * re_ + im_ * im_;
  return {ring_, re_ / n, -im_ / n};
}

Scalar Scalar::pow(unsigned long e) const {
  Scalar result = one(ring_), base = *this;
  while (e) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

Scalar Scalar::conj() const {
  if (!ring_.has_conjugation()) return *this;
  return {ring_, re_, -im_};
}

std::string Scalar::to_string() const {
  if (im_ == 0) return re_.get_str();
  std::string s = re_.get_str();
  s += (im_ < 0 ? "-" : "+");
  s += mpq_class(abs(im_)).get_str() + "i";
  return s;
}

Scalar ring_reduce(const Scalar& x, unsigned long p) {
  const RingKind k = x.ring().kind();
  if (k == RingKind::PrimeField || k == RingKind::F9)
    throw std::invalid_argument("ring_reduce: source ring is already finite");
  if (!is_prime(p)) throw std::invalid_argument("ring_reduce: modulus must be prime");
  if (p == 2 && (k == RingKind::IntHalf || k == RingKind::GaussHalf || k == RingKind::Rat))
    throw std::domain_error("ring_reduce: 2 is a unit in " + x.ring().name() + ", reduction mod 2 collapses");
  if (k == RingKind::GaussHalf) {
    if (p != 3) throw std::domain_error("ring_reduce: Z[1/2,i] reduces to F9 only for p = 3");
    return {RingDescriptor::f9(), x.real(), x.imag()};
  }
  return {RingDescriptor::prime_field(p), reduce_mod(x.real(), p)};
}

}  // namespace cova
