#pragma once

// Correctly-rounded multiple-precision floating point backed by MPFR.
//
// Every value carries its own mantissa precision in bits.  Binary operations
// round to the smaller of the two operand precisions, so precision never
// silently inflates through a computation; fresh values default to the
// configured working precision (config().precision_digits significant
// decimal digits plus a guard band).

#include <mpfr.h>

#include <string>

#include "qh/config.hpp"
#include "qh/rational.hpp"

namespace qh {

class BigReal {
 public:
  BigReal() : BigReal(default_bits()) { mpfr_set_zero(v_, 1); }
  explicit BigReal(long prec_bits) { mpfr_init2(v_, prec_bits); mpfr_set_zero(v_, 1); }
  BigReal(const BigReal& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigReal(BigReal&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  BigReal& operator=(const BigReal& o);
  BigReal& operator=(BigReal&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigReal() { mpfr_clear(v_); }

  // Conversions (all at the given precision; 0 means the configured default).
  static BigReal of(int n, long prec_bits = 0) { return of(static_cast<long>(n), prec_bits); }
  static BigReal of(long n, long prec_bits = 0);
  static BigReal of(double d, long prec_bits = 0);
  static BigReal of(const Rational& r, long prec_bits = 0);
  static BigReal parse(const std::string& text, long prec_bits = 0);

  static long default_bits() { return bits_for_digits(config().precision_digits); }

  long precision_bits() const { return mpfr_get_prec(v_); }
  int precision_digits() const {
    return static_cast<int>((precision_bits() - 32) / 3.3219280948873623);
  }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  // Floor of the value as a long (the value must fit).
  long floor_long() const;

  BigReal operator-() const;
  friend BigReal operator+(const BigReal& a, const BigReal& b) { return binary(a, b, mpfr_add); }
  friend BigReal operator-(const BigReal& a, const BigReal& b) { return binary(a, b, mpfr_sub); }
  friend BigReal operator*(const BigReal& a, const BigReal& b) { return binary(a, b, mpfr_mul); }
  friend BigReal operator/(const BigReal& a, const BigReal& b) { return binary(a, b, mpfr_div); }
  BigReal& operator+=(const BigReal& o) { *this = *this + o; return *this; }
  BigReal& operator-=(const BigReal& o) { *this = *this - o; return *this; }
  BigReal& operator*=(const BigReal& o) { *this = *this * o; return *this; }
  BigReal& operator/=(const BigReal& o) { *this = *this / o; return *this; }

  friend BigReal operator*(const BigReal& a, long n);
  friend BigReal operator/(const BigReal& a, long n);
  friend BigReal operator+(const BigReal& a, long n);
  friend BigReal operator-(const BigReal& a, long n);
  friend BigReal operator*(const BigReal& a, const Rational& r);
  friend BigReal operator/(const BigReal& a, const Rational& r);

  friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
  friend bool operator<(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
  friend bool operator<=(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
  friend bool operator>(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
  friend bool operator>=(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }

  BigReal abs() const;
  BigReal sqrt() const;
  BigReal exp() const;
  BigReal log() const; // natural logarithm; argument must be positive
  BigReal pow(const BigReal& e) const;
  BigReal pow(long e) const;
  // Integer-exponent power of a long base at this value's precision.
  static BigReal pow_si(long base, long e, long prec_bits = 0);

  // |*this - o| <= 10^(-digits)
  bool close_to(const BigReal& o, int digits) const;

  // Decimal scientific form, e.g. "-1.23456789e-4".  digits == 0 prints the
  // full working precision.
  std::string str(int digits = 0) const;

  // Constants at the requested precision (0 = configured default).
  static BigReal pi(long prec_bits = 0);
  static BigReal euler_gamma(long prec_bits = 0);
  // Reference Riemann zeta at integer argument (library routine; used to
  // cross-check the series implementation in the sums module).
  static BigReal zeta_ref(unsigned long s, long prec_bits = 0);

 private:
  static BigReal binary(const BigReal& a, const BigReal& b,
                        int (*op)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t));
  mpfr_t v_;
};

std::ostream& operator<<(std::ostream& os, const BigReal& x);

} // namespace qh
