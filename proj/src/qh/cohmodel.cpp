#include "qh/cohmodel.hpp"

#include <stdexcept>

#include "qh/mzv.hpp"

namespace qh {

Space Space::projective(int N) {
  if (N < 1) throw std::invalid_argument("Space::projective: N must be >= 1");
  return Space{SpaceId::Projective, N};
}

int Space::real_degree(std::size_t i) const {
  if (i >= dim()) throw std::invalid_argument("Space::real_degree: index out of range");
  if (id == SpaceId::Projective) return 2 * static_cast<int>(i);
  static const int deg[8] = {0, 2, 4, 6, 6, 8, 10, 12};
  return deg[i];
}

std::vector<std::string> Space::basis_names() const {
  if (id == SpaceId::Projective) {
    std::vector<std::string> names{"1", "h"};
    for (int k = 2; k <= N; ++k) names.push_back("h^" + std::to_string(k));
    names.resize(dim());
    return names;
  }
  return {"1", "a", "a^2", "a^3", "x", "a*x", "a^2*x", "a^3*x"};
}

std::vector<Rational> Space::basis_product(std::size_t i, std::size_t j) const {
  const std::size_t n = dim();
  if (i >= n || j >= n) throw std::invalid_argument("Space::basis_product: index out of range");
  std::vector<Rational> out(n);
  if (id == SpaceId::Projective) {
    if (i + j < n) out[i + j] = Rational(1);
    return out;
  }
  // Basis layout: 0..3 are a^0..a^3, 4..7 are a^0 x .. a^3 x.
  const bool xi = i >= 4, xj = j >= 4;
  const std::size_t pi = xi ? i - 4 : i, pj = xj ? j - 4 : j;
  if (xi && xj) return out; // x^2 = 0
  const std::size_t p = pi + pj;
  if (xi || xj) {
    if (p <= 3) out[4 + p] = Rational(1);
    return out;
  }
  if (p <= 3) {
    out[p] = Rational(1);
  } else if (p <= 6) {
    out[4 + (p - 3)] = Rational(-8);
  }
  return out;
}

Rational Space::integral_coeff(std::size_t i) const {
  if (i >= dim()) throw std::invalid_argument("Space::integral_coeff: index out of range");
  if (id == SpaceId::Projective) return i == static_cast<std::size_t>(N) ? Rational(1) : Rational(0);
  return i == 7 ? Rational(8) : Rational(0);
}

std::vector<std::vector<Rational>> Space::chern_character() const {
  const std::size_t n = dim();
  std::vector<std::vector<Rational>> ch;
  if (id == SpaceId::Projective) {
    // ch_k = (N+1) h^k / k!
    Rational inv_factorial(1);
    for (int k = 1; k <= N; ++k) {
      inv_factorial /= Rational(k);
      std::vector<Rational> cls(n);
      cls[static_cast<std::size_t>(k)] = Rational(N + 1) * inv_factorial;
      ch.push_back(std::move(cls));
    }
    return ch;
  }
  auto cls = [n](std::initializer_list<std::pair<std::size_t, Rational>> entries) {
    std::vector<Rational> v(n);
    for (const auto& [k, c] : entries) v[k] = c;
    return v;
  };
  ch.push_back(cls({{1, Rational(1)}}));                      // ch_1 = a
  ch.push_back(cls({{2, Rational(1, 2)}}));                   // ch_2 = a^2/2
  ch.push_back(cls({{3, Rational(1, 6)}, {4, Rational(1)}})); // ch_3 = a^3/6 + x
  ch.push_back(cls({{5, Rational(1, 6)}}));                   // ch_4 = ax/6
  ch.push_back(cls({{6, Rational(7, 120)}}));                 // ch_5 = 7 a^2 x/120
  ch.push_back(cls({{7, Rational(7, 720)}}));                 // ch_6 = 7 a^3 x/720
  return ch;
}

std::vector<Rational> Space::c1() const {
  std::vector<Rational> v(dim());
  v[1] = id == SpaceId::Projective ? Rational(N + 1) : Rational(1);
  return v;
}

std::vector<BigReal> gamma_class(const Space& sp, long prec_bits) {
  const long bits = prec_bits > 0 ? prec_bits : BigReal::default_bits();
  const auto ch = sp.chern_character();
  const std::size_t n = sp.dim();
  std::vector<BigReal> arg(n, BigReal(bits));
  // -gamma * ch_1
  BigReal gamma = BigReal::euler_gamma(bits);
  for (std::size_t i = 0; i < n; ++i) arg[i] = arg[i] + (-gamma) * ch[0][i];
  // + sum_{k>=2} (-1)^k (k-1)! zeta(k) ch_k
  Rational fact(1);
  for (std::size_t k = 2; k <= ch.size(); ++k) {
    fact *= Rational(static_cast<long>(k) - 1);
    BigReal coeff = mzv::zeta_em(static_cast<long>(k), bits) * ((k % 2 == 0) ? 1 : -1);
    for (std::size_t i = 0; i < n; ++i)
      arg[i] = arg[i] + coeff * (ch[k - 1][i] * fact);
  }
  return ring_exp(sp, arg);
}

std::vector<Rational> loop_euler_class(const Space& sp, long n) {
  if (n < 0) throw std::invalid_argument("loop_euler_class: cutoff must be >= 0");
  const auto ch = sp.chern_character();
  const std::size_t dim = sp.dim();
  std::vector<Rational> arg(dim);
  Rational fact(1); // (m-1)!
  for (std::size_t m = 1; m <= ch.size(); ++m) {
    if (m >= 2) fact *= Rational(static_cast<long>(m) - 1);
    Rational zn = mzv::strict_exact({static_cast<int>(m)}, n);
    Rational coeff = ((m % 2 == 0) ? fact : -fact) * zn;
    for (std::size_t i = 0; i < dim; ++i) arg[i] += coeff * ch[m - 1][i];
  }
  return ring_exp(sp, arg);
}

Matrix<Rational> c1_matrix(const Space& sp, const Rational& q, const Rational& chi) {
  const std::size_t n = sp.dim();
  Matrix<Rational> m(n, n);
  if (sp.id == SpaceId::Projective) {
    const Rational r(sp.N + 1);
    for (std::size_t j = 0; j + 1 < n; ++j) m(j + 1, j) = r;
    m(0, n - 1) = r * q;
    return m;
  }
  // Multiplication by a with quantum corrections; columns are images of the
  // basis vectors 1, a, a^2, a^3, x, ax, a^2 x, a^3 x.
  const Rational q4 = Rational(4) * q;
  m(1, 0) = Rational(1);
  m(0, 1) = q4;
  m(2, 1) = Rational(1);
  m(3, 2) = Rational(1);
  m(2, 3) = q4;
  m(5, 3) = Rational(8) * chi; // degree-six symbol slot
  m(5, 4) = Rational(1);
  m(4, 5) = q4;
  m(6, 5) = Rational(1);
  m(7, 6) = Rational(1);
  m(6, 7) = q4;
  return m;
}

Matrix<Rational> y_block_matrix(const Rational& q) {
  Matrix<Rational> m(4, 4);
  const Rational q4 = Rational(4) * q;
  m(1, 0) = Rational(1);
  m(0, 1) = q4;
  m(2, 1) = Rational(1);
  m(3, 2) = Rational(1);
  m(2, 3) = q4;
  return m;
}

Matrix<Rational> grading_matrix(const Space& sp) {
  const std::size_t n = sp.dim();
  Matrix<Rational> m(n, n);
  const int dim_c = sp.id == SpaceId::Projective ? sp.N : 6;
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Rational(sp.real_degree(i) - dim_c, 2);
  return m;
}

Matrix<Rational> y_block_grading(int mdeg) {
  Matrix<Rational> m(4, 4);
  for (std::size_t j = 0; j < 4; ++j) m(j, j) = Rational(mdeg - 6, 2) + Rational(static_cast<long>(j));
  return m;
}

} // namespace qh
