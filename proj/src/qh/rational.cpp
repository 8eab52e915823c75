#include "qh/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace qh {

Rational::Rational(long num, long den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  mpq_init(v_);
  mpq_set_si(v_, num, 1);
  mpq_t d;
  mpq_init(d);
  mpq_set_si(d, den, 1);
  mpq_div(v_, v_, d);
  mpq_clear(d);
}

Rational::Rational(const std::string& text) {
  mpq_init(v_);
  if (mpq_set_str(v_, text.c_str(), 10) != 0) {
    mpq_clear(v_);
    throw std::invalid_argument("Rational: cannot parse '" + text + "'");
  }
  if (mpz_sgn(mpq_denref(v_)) == 0) {
    mpq_clear(v_);
    throw std::domain_error("Rational: zero denominator in '" + text + "'");
  }
  mpq_canonicalize(v_);
}

long Rational::to_long() const {
  if (!is_integer()) throw std::domain_error("Rational::to_long: not an integer");
  if (!mpz_fits_slong_p(mpq_numref(v_))) throw std::domain_error("Rational::to_long: overflow");
  return mpz_get_si(mpq_numref(v_));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  mpq_div(v_, v_, o.v_);
  return *this;
}

Rational Rational::inverse() const {
  if (is_zero()) throw std::domain_error("Rational: inverse of zero");
  Rational r;
  mpq_inv(r.v_, v_);
  return r;
}

Rational Rational::pow(long e) const {
  if (e == 0) return Rational(1);
  Rational base = e < 0 ? inverse() : *this;
  unsigned long n = e < 0 ? static_cast<unsigned long>(-(e + 1)) + 1UL : static_cast<unsigned long>(e);
  Rational r;
  mpz_pow_ui(mpq_numref(r.v_), mpq_numref(base.v_), n);
  mpz_pow_ui(mpq_denref(r.v_), mpq_denref(base.v_), n);
  // Powers of a canonical value stay canonical (gcd preserved, den > 0).
  return r;
}

std::string Rational::str() const {
  char* s = mpq_get_str(nullptr, 10, v_);
  std::string out(s);
  void (*freefn)(void*, size_t);
  mp_get_memory_functions(nullptr, nullptr, &freefn);
  freefn(s, out.size() + 1);
  return out;
}

std::size_t Rational::hash() const {
  // Mix limb data of numerator and denominator.
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  auto mix = [&h](const mpz_t z) {
    h ^= static_cast<std::size_t>(mpz_sgn(z)) + (h << 6);
    std::size_t n = mpz_size(z);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= static_cast<std::size_t>(mpz_getlimbn(z, i)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
  };
  mix(mpq_numref(v_));
  mix(mpq_denref(v_));
  return h;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational factorial(unsigned long n) {
  mpq_t q;
  mpq_init(q);
  mpz_fac_ui(mpq_numref(q), n);
  Rational r = Rational::from_mpq(q);
  mpq_clear(q);
  return r;
}

Rational binomial(unsigned long n, unsigned long k) {
  mpq_t q;
  mpq_init(q);
  mpz_bin_uiui(mpq_numref(q), n, k);
  Rational r = Rational::from_mpq(q);
  mpq_clear(q);
  return r;
}

} // namespace qh
