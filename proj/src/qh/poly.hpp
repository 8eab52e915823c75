#pragma once

// Dense univariate polynomials over a field-like coefficient type K.
// K needs: default ctor (zero), K(long), +, -, *, /, ==, is_zero().
// Coefficient vectors are always trimmed, so degree() is exact and the zero
// polynomial has an empty coefficient vector (degree -1 by convention).

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qh {

template <class K>
class Poly {
 public:
  Poly() = default;
  Poly(K constant) { c_.push_back(std::move(constant)); trim(); }
  explicit Poly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly monomial(K coeff, std::size_t power) {
    std::vector<K> c(power + 1);
    c[power] = std::move(coeff);
    return Poly(std::move(c));
  }
  static Poly x() { return monomial(K(1), 1); }

  bool is_zero() const { return c_.empty(); }
  // degree of 0 is -1 by convention
  long degree() const { return static_cast<long>(c_.size()) - 1; }

  // Index of the lowest nonzero coefficient; throws on the zero polynomial.
  long valuation() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!c_[i].is_zero()) return static_cast<long>(i);
    throw std::domain_error("Poly::valuation: zero polynomial");
  }

  K coeff(std::size_t i) const { return i < c_.size() ? c_[i] : K(); }
  const std::vector<K>& coeffs() const { return c_; }
  K leading() const {
    if (is_zero()) throw std::domain_error("Poly::leading: zero polynomial");
    return c_.back();
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<K> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
    return Poly(std::move(c));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<K> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
    return Poly(std::move(c));
  }
  Poly operator-() const {
    std::vector<K> c(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) c[i] = K() - c_[i];
    return Poly(std::move(c));
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<K> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
    return Poly(std::move(c));
  }
  friend Poly operator*(const Poly& a, const K& s) {
    std::vector<K> c(a.c_.size());
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] = a.c_[i] * s;
    return Poly(std::move(c));
  }
  friend Poly operator*(const K& s, const Poly& a) { return a * s; }
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  // Euclidean division: returns (quotient, remainder) with deg r < deg b.
  friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("Poly: division by zero polynomial");
    Poly r = a, q;
    const long db = b.degree();
    const K lb = b.leading();
    while (!r.is_zero() && r.degree() >= db) {
      const long k = r.degree() - db;
      K f = r.leading() / lb;
      q += monomial(f, static_cast<std::size_t>(k));
      r -= monomial(f, static_cast<std::size_t>(k)) * b;
    }
    return {q, r};
  }
  friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
  friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<K> c(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * K(static_cast<long>(i));
    return Poly(std::move(c));
  }

  template <class V>
  V evaluate(const V& x, const V& one) const {
    V acc = one - one; // zero of V
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + promote(c_[i], one);
    return acc;
  }
  K evaluate(const K& x) const {
    K acc{};
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  Poly monic() const {
    if (is_zero()) return *this;
    return *this * (K(1) / leading());
  }

  // Renders with the given variable name, highest power first.
  std::string str(const std::string& var) const;

 private:
  template <class V>
  static V promote(const K& k, const V& one) {
    return one * k;
  }
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<K> c_;
};

template <class K>
Poly<K> poly_gcd(Poly<K> a, Poly<K> b) {
  while (!b.is_zero()) {
    auto r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a.monic();
}

template <class K>
std::string Poly<K>::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    std::string cs = c_[i].str();
    if (!out.empty()) {
      if (!cs.empty() && cs[0] == '-') {
        out += " - ";
        cs = cs.substr(1);
      } else {
        out += " + ";
      }
    }
    if (i == 0) {
      out += cs;
    } else {
      std::string pw = (i == 1) ? var : var + "^" + std::to_string(i);
      if (cs == "1")
        out += pw;
      else if (cs == "-1")
        out += "-" + pw;
      else
        out += cs + "*" + pw;
    }
  }
  return out;
}

} // namespace qh
