#include "qh/ratfun.hpp"

#include <cctype>
#include <stdexcept>

namespace qh {

RationalFunction::RationalFunction(RatPoly num, RatPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("RationalFunction: zero denominator");
  reduce();
}

RationalFunction RationalFunction::u_power(Rational c, long k) {
  if (k >= 0) return RationalFunction(RatPoly::monomial(std::move(c), static_cast<std::size_t>(k)));
  return RationalFunction(RatPoly(std::move(c)), RatPoly::monomial(Rational(1), static_cast<std::size_t>(-k)));
}

Rational RationalFunction::constant() const {
  if (!is_constant()) throw std::domain_error("RationalFunction::constant: not constant");
  return num_.coeff(0);
}

std::optional<long> RationalFunction::valuation() const {
  if (is_zero()) return std::nullopt;
  return num_.valuation() - den_.valuation();
}

void RationalFunction::reduce() {
  if (num_.is_zero()) {
    den_ = RatPoly(Rational(1));
    return;
  }
  RatPoly g = poly_gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = num_ / g;
    den_ = den_ / g;
  }
  Rational lead = den_.leading();
  if (!(lead == Rational(1))) {
    Rational inv = lead.inverse();
    num_ = num_ * inv;
    den_ = den_ * inv;
  }
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}
RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}
RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}
RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.is_zero()) throw std::domain_error("RationalFunction: division by zero");
  return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

RationalFunction RationalFunction::derivative() const {
  return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

std::vector<Rational> RationalFunction::laurent(long lo, long hi) const {
  std::vector<Rational> out(static_cast<std::size_t>(hi - lo + 1));
  if (is_zero()) return out;
  // num/den = u^(vn - vd) * n0/d0 with n0(0) != 0, d0(0) != 0.
  const long vn = num_.valuation(), vd = den_.valuation();
  const long shift = vn - vd;
  std::vector<Rational> n0, d0;
  for (long i = vn; i <= num_.degree(); ++i) n0.push_back(num_.coeff(static_cast<std::size_t>(i)));
  for (long i = vd; i <= den_.degree(); ++i) d0.push_back(den_.coeff(static_cast<std::size_t>(i)));
  // Power-series division n0/d0 up to order (hi - shift).
  const long need = hi - shift;
  if (need < 0) return out;
  std::vector<Rational> s(static_cast<std::size_t>(need) + 1);
  Rational inv0 = d0[0].inverse();
  for (long k = 0; k <= need; ++k) {
    Rational acc = (static_cast<std::size_t>(k) < n0.size()) ? n0[static_cast<std::size_t>(k)] : Rational(0);
    for (long j = 1; j <= k && static_cast<std::size_t>(j) < d0.size(); ++j)
      acc -= d0[static_cast<std::size_t>(j)] * s[static_cast<std::size_t>(k - j)];
    s[static_cast<std::size_t>(k)] = acc * inv0;
  }
  for (long p = lo; p <= hi; ++p) {
    long k = p - shift;
    if (k >= 0 && k <= need) out[static_cast<std::size_t>(p - lo)] = s[static_cast<std::size_t>(k)];
  }
  return out;
}

std::string RationalFunction::str() const {
  if (is_zero()) return "0";
  if (den_.degree() == 0) return num_.str("u");
  // Pure power-of-u denominator: render as a Laurent sum, highest power first.
  if (den_.valuation() == den_.degree()) {
    const long k = den_.degree();
    std::string out;
    for (long i = num_.degree(); i >= 0; --i) {
      Rational c = num_.coeff(static_cast<std::size_t>(i));
      if (c.is_zero()) continue;
      std::string cs = c.str();
      bool neg = cs[0] == '-';
      if (neg) cs = cs.substr(1);
      out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
      const long p = i - k; // power of u carried by this term
      if (p == 0) {
        out += cs;
      } else if (p > 0) {
        std::string pw = (p == 1) ? "u" : "u^" + std::to_string(p);
        out += (cs == "1") ? pw : cs + "*" + pw;
      } else {
        std::string pw = (p == -1) ? "u" : "u^" + std::to_string(-p);
        out += cs + "/" + pw;
      }
    }
    return out;
  }
  return "(" + num_.str("u") + ")/(" + den_.str("u") + ")";
}

// --------------------------------------------------------------------------
// Recursive-descent parser for rational-function expressions.
// --------------------------------------------------------------------------

namespace {

struct RfParser {
  const std::string& s;
  std::size_t pos = 0;

  explicit RfParser(const std::string& text) : s(text) {}

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool peek(char c) {
    skip_ws();
    return pos < s.size() && s[pos] == c;
  }
  bool eat(char c) {
    if (peek(c)) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("rational-function parse error at position " + std::to_string(pos) + ": " + what);
  }

  long integer() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) fail("expected integer");
    return std::stol(s.substr(start, pos - start));
  }

  RationalFunction atom() {
    skip_ws();
    if (pos >= s.size()) fail("unexpected end of input");
    if (eat('(')) {
      RationalFunction e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (s[pos] == 'u') {
      ++pos;
      return RationalFunction::u();
    }
    if (std::isdigit(static_cast<unsigned char>(s[pos]))) return RationalFunction(Rational(integer()));
    fail(std::string("unexpected character '") + s[pos] + "'");
  }

  RationalFunction factor() {
    skip_ws();
    bool neg = false;
    while (eat('-')) neg = !neg;
    RationalFunction a = atom();
    if (eat('^')) {
      bool eneg = eat('-');
      long e = integer();
      if (eneg) e = -e;
      RationalFunction p(1);
      RationalFunction base = e < 0 ? RationalFunction(1) / a : a;
      for (long i = 0; i < (e < 0 ? -e : e); ++i) p *= base;
      a = p;
    }
    return neg ? -a : a;
  }

  RationalFunction term() {
    RationalFunction a = factor();
    for (;;) {
      if (eat('*'))
        a *= factor();
      else if (eat('/'))
        a /= factor();
      else
        return a;
    }
  }

  RationalFunction expr() {
    skip_ws();
    bool neg = eat('-');
    RationalFunction a = term();
    if (neg) a = -a;
    for (;;) {
      if (eat('+'))
        a += term();
      else if (eat('-'))
        a -= term();
      else
        return a;
    }
  }
};

} // namespace

RationalFunction parse_rational_function(const std::string& text) {
  RfParser p(text);
  RationalFunction r = p.expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return r;
}

} // namespace qh
