#pragma once

// Rational functions in one variable u over the rationals, kept reduced:
// gcd(num, den) = 1 and den monic.  Equality of reduced forms is therefore
// structural equality.

#include <optional>
#include <string>

#include "qh/poly.hpp"
#include "qh/rational.hpp"

namespace qh {

using RatPoly = Poly<Rational>;

class RationalFunction {
 public:
  RationalFunction() : num_(), den_(Rational(1)) {}
  RationalFunction(long n) : num_(Rational(n)), den_(Rational(1)) {}
  RationalFunction(Rational r) : num_(std::move(r)), den_(Rational(1)) {}
  RationalFunction(RatPoly num) : num_(std::move(num)), den_(Rational(1)) {}
  RationalFunction(RatPoly num, RatPoly den);

  static RationalFunction u() { return RationalFunction(RatPoly::x()); }
  // c * u^k for any integer k (negative powers allowed).
  static RationalFunction u_power(Rational c, long k);

  const RatPoly& num() const { return num_; }
  const RatPoly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
  Rational constant() const;

  // Order of vanishing at u = 0: val(num) - val(den).  Zero has no finite
  // valuation and is reported as std::nullopt (conceptually +infinity).
  std::optional<long> valuation() const;

  RationalFunction operator-() const;
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
  RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

  RationalFunction derivative() const;

  // Laurent coefficients around u = 0 for powers lo..hi inclusive.
  std::vector<Rational> laurent(long lo, long hi) const;

  // Rendering: Laurent form when the denominator is a pure power of u
  // (e.g. "16/u^4 - 16/u^2"), otherwise "(num)/(den)".
  std::string str() const;

 private:
  void reduce();
  RatPoly num_, den_;
};

// Parses expressions built from integers, 'u', '+', '-', '*', '/', '^', and
// parentheses, e.g. "16/u^4-16/u^2".  Throws std::invalid_argument with a
// position hint on malformed input.
RationalFunction parse_rational_function(const std::string& text);

} // namespace qh
