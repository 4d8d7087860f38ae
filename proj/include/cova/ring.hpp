#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace cova {

enum class RingKind { Int, Rat, PrimeField, IntHalf, GaussHalf, F9 };

/// Coefficient ring tag. PrimeField carries its prime; F9 is F_3[i], i^2 = -1.
class RingDescriptor {
 public:
  static RingDescriptor integers() { return {RingKind::Int, 0}; }
  static RingDescriptor rationals() { return {RingKind::Rat, 0}; }
  static RingDescriptor prime_field(unsigned long p);
  static RingDescriptor int_half() { return {RingKind::IntHalf, 0}; }
  static RingDescriptor gauss_half() { return {RingKind::GaussHalf, 0}; }
  static RingDescriptor f9() { return {RingKind::F9, 3}; }

  /// Accepts Z, Q, F<p>, F9, Z12, GZ12.
  static RingDescriptor parse(std::string_view name);

  RingKind kind() const { return kind_; }
  unsigned long characteristic() const { return p_; }
  bool has_conjugation() const { return kind_ == RingKind::GaussHalf || kind_ == RingKind::F9; }
  bool is_field() const {
    return kind_ == RingKind::Rat || kind_ == RingKind::PrimeField || kind_ == RingKind::F9;
  }
  bool is_finite() const { return kind_ == RingKind::PrimeField || kind_ == RingKind::F9; }
  std::string name() const;

  friend bool operator==(const RingDescriptor&, const RingDescriptor&) = default;

 private:
  RingDescriptor(RingKind k, unsigned long p) : kind_(k), p_(p) {}
  RingKind kind_;
  unsigned long p_;
};

bool is_prime(unsigned long n);

/// Element of one of the supported rings. Every kind is stored as a pair of
/// rationals (real, imaginary) normalized to the ring's canonical
/// representatives, so arithmetic is exact for all of them.
class Scalar {
 public:
  Scalar(RingDescriptor ring, long value);
  Scalar(RingDescriptor ring, const mpq_class& re, const mpq_class& im = 0);

  static Scalar zero(RingDescriptor r) { return {r, 0}; }
  static Scalar one(RingDescriptor r) { return {r, 1}; }
  /// sqrt(-1); only for rings with conjugation.
  static Scalar imaginary_unit(RingDescriptor r);

  const RingDescriptor& ring() const { return ring_; }
  const mpq_class& real() const { return re_; }
  const mpq_class& imag() const { return im_; }
  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_unit() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar inverse() const;
  Scalar pow(unsigned long e) const;
  Scalar conj() const;

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.ring_ == b.ring_ && a.re_ == b.re_ && a.im_ == b.im_;
  }
  std::string to_string() const;

 private:
  void normalize();
  void require_same(const Scalar& o) const;

  RingDescriptor ring_;
  mpq_class re_;
  mpq_class im_;
};

/// Reduction of Z[1/2] (or Z, Q with odd denominators) into F_p, and of
/// Z[1/2, i] into F9 for p = 3. Rejects p = 2, where 1/2 has no image.
Scalar ring_reduce(const Scalar& x, unsigned long p);

/// Residue of a rational with denominator prime to p.
unsigned long reduce_mod(const mpq_class& q, unsigned long p);

}  // namespace cova
