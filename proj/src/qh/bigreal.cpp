#include "qh/bigreal.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace qh {

namespace {
long pick(long prec_bits) { return prec_bits > 0 ? prec_bits : BigReal::default_bits(); }
} // namespace

BigReal& BigReal::operator=(const BigReal& o) {
  if (this != &o) {
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

BigReal BigReal::of(long n, long prec_bits) {
  BigReal r(pick(prec_bits));
  mpfr_set_si(r.v_, n, MPFR_RNDN);
  return r;
}

BigReal BigReal::of(double d, long prec_bits) {
  BigReal r(pick(prec_bits));
  mpfr_set_d(r.v_, d, MPFR_RNDN);
  return r;
}

BigReal BigReal::of(const Rational& q, long prec_bits) {
  BigReal r(pick(prec_bits));
  mpfr_set_q(r.v_, q.raw(), MPFR_RNDN);
  return r;
}

BigReal BigReal::parse(const std::string& text, long prec_bits) {
  BigReal r(pick(prec_bits));
  if (mpfr_set_str(r.v_, text.c_str(), 10, MPFR_RNDN) != 0 && !mpfr_number_p(r.v_))
    throw std::invalid_argument("BigReal: cannot parse '" + text + "'");
  return r;
}

long BigReal::floor_long() const {
  mpfr_t f;
  mpfr_init2(f, mpfr_get_prec(v_));
  mpfr_floor(f, v_);
  if (!mpfr_fits_slong_p(f, MPFR_RNDN)) {
    mpfr_clear(f);
    throw std::domain_error("BigReal::floor_long: out of range");
  }
  long out = mpfr_get_si(f, MPFR_RNDN);
  mpfr_clear(f);
  return out;
}

BigReal BigReal::operator-() const {
  BigReal r(precision_bits());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

BigReal BigReal::binary(const BigReal& a, const BigReal& b,
                        int (*op)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t)) {
  BigReal r(std::min(a.precision_bits(), b.precision_bits()));
  op(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigReal operator*(const BigReal& a, long n) {
  BigReal r(a.precision_bits());
  mpfr_mul_si(r.raw(), a.raw(), n, MPFR_RNDN);
  return r;
}
BigReal operator/(const BigReal& a, long n) {
  BigReal r(a.precision_bits());
  mpfr_div_si(r.raw(), a.raw(), n, MPFR_RNDN);
  return r;
}
BigReal operator+(const BigReal& a, long n) {
  BigReal r(a.precision_bits());
  mpfr_add_si(r.raw(), a.raw(), n, MPFR_RNDN);
  return r;
}
BigReal operator-(const BigReal& a, long n) {
  BigReal r(a.precision_bits());
  mpfr_sub_si(r.raw(), a.raw(), n, MPFR_RNDN);
  return r;
}
BigReal operator*(const BigReal& a, const Rational& q) {
  BigReal r(a.precision_bits());
  mpfr_mul_q(r.raw(), a.raw(), q.raw(), MPFR_RNDN);
  return r;
}
BigReal operator/(const BigReal& a, const Rational& q) {
  BigReal r(a.precision_bits());
  mpfr_div_q(r.raw(), a.raw(), q.raw(), MPFR_RNDN);
  return r;
}

BigReal BigReal::abs() const {
  BigReal r(precision_bits());
  mpfr_abs(r.v_, v_, MPFR_RNDN);
  return r;
}

BigReal BigReal::sqrt() const {
  BigReal r(precision_bits());
  mpfr_sqrt(r.v_, v_, MPFR_RNDN);
  return r;
}

BigReal BigReal::exp() const {
  BigReal r(precision_bits());
  mpfr_exp(r.v_, v_, MPFR_RNDN);
  return r;
}

BigReal BigReal::log() const {
  if (sign() <= 0) throw std::domain_error("BigReal::log: argument must be positive");
  BigReal r(precision_bits());
  mpfr_log(r.v_, v_, MPFR_RNDN);
  return r;
}

BigReal BigReal::pow(const BigReal& e) const {
  BigReal r(std::min(precision_bits(), e.precision_bits()));
  mpfr_pow(r.v_, v_, e.v_, MPFR_RNDN);
  return r;
}

BigReal BigReal::pow(long e) const {
  BigReal r(precision_bits());
  mpfr_pow_si(r.v_, v_, e, MPFR_RNDN);
  return r;
}

BigReal BigReal::pow_si(long base, long e, long prec_bits) {
  return of(base, prec_bits).pow(e);
}

bool BigReal::close_to(const BigReal& o, int digits) const {
  BigReal diff = (*this - o).abs();
  BigReal tol(std::min(precision_bits(), o.precision_bits()));
  mpfr_set_si(tol.v_, 10, MPFR_RNDN);
  mpfr_pow_si(tol.v_, tol.v_, -digits, MPFR_RNDN);
  return diff <= tol;
}

std::string BigReal::str(int digits) const {
  if (!is_finite()) return mpfr_nan_p(v_) ? "nan" : (sign() > 0 ? "inf" : "-inf");
  if (is_zero()) return "0";
  int nd = digits > 0 ? digits : precision_digits();
  if (nd < 2) nd = 2;
  mpfr_exp_t e = 0;
  char* s = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(nd), v_, MPFR_RNDN);
  std::string m(s);
  mpfr_free_str(s);
  bool neg = !m.empty() && m[0] == '-';
  std::string mag = neg ? m.substr(1) : m;
  // mpfr returns mantissa digits with implied decimal point before them:
  // value = 0.mag * 10^e.  Render as d.ddd e(e-1).
  std::string out = (neg ? "-" : "");
  out += mag.substr(0, 1);
  if (mag.size() > 1) {
    std::string frac = mag.substr(1);
    while (frac.size() > 1 && frac.back() == '0') frac.pop_back();
    if (!(frac.size() == 1 && frac[0] == '0')) out += "." + frac;
  }
  out += "e" + std::to_string(static_cast<long>(e) - 1);
  return out;
}

BigReal BigReal::pi(long prec_bits) {
  BigReal r(pick(prec_bits));
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

BigReal BigReal::euler_gamma(long prec_bits) {
  BigReal r(pick(prec_bits));
  mpfr_const_euler(r.v_, MPFR_RNDN);
  return r;
}

BigReal BigReal::zeta_ref(unsigned long s, long prec_bits) {
  BigReal r(pick(prec_bits));
  mpfr_zeta_ui(r.v_, s, MPFR_RNDN);
  return r;
}

std::ostream& operator<<(std::ostream& os, const BigReal& x) { return os << x.str(); }

} // namespace qh
