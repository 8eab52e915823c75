#pragma once

// Arbitrary-precision rational numbers backed by GMP's mpq_t.
// Values are always kept canonical: lowest terms, positive denominator.
// Equality is therefore structural equality of (num, den).

#include <gmp.h>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>

namespace qh {

class Rational {
 public:
  Rational() { mpq_init(v_); } // zero
  Rational(long n) {
    mpq_init(v_);
    mpq_set_si(v_, n, 1);
  }
  Rational(long num, long den);
  explicit Rational(const std::string& text); // parses "p", "-p", "p/q"
  Rational(const Rational& o) {
    mpq_init(v_);
    mpq_set(v_, o.v_);
  }
  Rational(Rational&& o) noexcept {
    mpq_init(v_);
    mpq_swap(v_, o.v_);
  }
  Rational& operator=(const Rational& o) {
    if (this != &o) mpq_set(v_, o.v_);
    return *this;
  }
  Rational& operator=(Rational&& o) noexcept {
    if (this != &o) mpq_swap(v_, o.v_);
    return *this;
  }
  ~Rational() { mpq_clear(v_); }

  static Rational from_mpq(const mpq_t q) {
    Rational r;
    mpq_set(r.v_, q);
    mpq_canonicalize(r.v_);
    return r;
  }

  const mpq_t& raw() const { return v_; }

  bool is_zero() const { return mpq_sgn(v_) == 0; }
  int sign() const { return mpq_sgn(v_); }
  bool is_integer() const { return mpz_cmp_ui(mpq_denref(v_), 1) == 0; }

  // Valid only when the value fits in a long; callers check is_integer first.
  long to_long() const;

  Rational operator-() const {
    Rational r;
    mpq_neg(r.v_, v_);
    return r;
  }
  Rational& operator+=(const Rational& o) {
    mpq_add(v_, v_, o.v_);
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    mpq_sub(v_, v_, o.v_);
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    mpq_mul(v_, v_, o.v_);
    return *this;
  }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return mpq_equal(a.v_, b.v_) != 0; }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) { return mpq_cmp(a.v_, b.v_) < 0; }
  friend bool operator<=(const Rational& a, const Rational& b) { return mpq_cmp(a.v_, b.v_) <= 0; }
  friend bool operator>(const Rational& a, const Rational& b) { return mpq_cmp(a.v_, b.v_) > 0; }
  friend bool operator>=(const Rational& a, const Rational& b) { return mpq_cmp(a.v_, b.v_) >= 0; }

  Rational abs() const {
    Rational r;
    mpq_abs(r.v_, v_);
    return r;
  }
  Rational inverse() const;

  // Integer exponent power; negative exponents invert (nonzero base required).
  Rational pow(long e) const;

  // Serialized as "p" for integers, "p/q" otherwise.
  std::string str() const;

  std::size_t hash() const;

 private:
  mpq_t v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

// n! and binomial(n, k) as exact rationals (integers).
Rational factorial(unsigned long n);
Rational binomial(unsigned long n, unsigned long k);

} // namespace qh

template <>
struct std::hash<qh::Rational> {
  std::size_t operator()(const qh::Rational& r) const { return r.hash(); }
};
