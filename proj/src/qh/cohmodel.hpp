#pragma once

// Finite-dimensional graded ring models for two families of spaces:
//
//  * projective space of complex dimension N: basis 1, h, ..., h^N with
//    h^i h^j = h^(i+j) truncated above degree N, unit top pairing on h^N;
//
//  * an eight-dimensional model with basis 1, a, a^2, a^3, x, ax, a^2 x,
//    a^3 x in real degrees 0,2,4,6,6,8,10,12.  The subring generated by a
//    closes only after degree six: a^i a^j = a^(i+j) for i+j <= 3, and
//    a^i a^j = -8 a^(i+j-3) x for 4 <= i+j <= 6; ax-type classes multiply by
//    a^i (a^j x) = a^(i+j) x for i+j <= 3 and zero beyond, and x^2 = 0.
//    The top pairing is <a^3 x> = 8, which forces the integral of a^6 to be
//    -64.  The model deliberately covers only this subring; the extra
//    odd-sector families enter through the descendant engine as parameters,
//    never through this multiplication table.
//
// On top of the ring the module provides Chern-character vectors, the
// Gamma-type class exp(-g ch_1 + sum_{k>=2} (-1)^k (k-1)! zeta(k) ch_k), its
// finite-cutoff analogue with partial zeta values (exact rationals), and the
// first-Chern-class quantum multiplication matrices used downstream.

#include <string>
#include <vector>

#include "qh/bigreal.hpp"
#include "qh/matrix.hpp"
#include "qh/poly.hpp"
#include "qh/ratfun.hpp"
#include "qh/rational.hpp"

namespace qh {

enum class SpaceId { Projective, Twistor };

struct Space {
  SpaceId id = SpaceId::Twistor;
  int N = 0; // complex dimension, meaningful for Projective only

  static Space projective(int N);
  static Space twistor() { return Space{SpaceId::Twistor, 6}; }

  std::size_t dim() const { return id == SpaceId::Projective ? static_cast<std::size_t>(N) + 1 : 8; }
  long fano_index() const { return id == SpaceId::Projective ? N + 1 : 2; }
  int real_degree(std::size_t i) const;
  std::vector<std::string> basis_names() const;

  // Dense product row: basis_i * basis_j as coefficients over the basis.
  std::vector<Rational> basis_product(std::size_t i, std::size_t j) const;
  // <basis_i> contribution to the integral over the space.
  Rational integral_coeff(std::size_t i) const;
  // ch_1 .. ch_n as classes (index 0 holds ch_1); n = complex dimension.
  std::vector<std::vector<Rational>> chern_character() const;
  // c_1 as a class.
  std::vector<Rational> c1() const;
};

// ---- ring operations templated over the scalar -----------------------------
// T needs: default (zero), T+T, T*T, T*Rational.

template <class T>
T scalar_from_rational(const Rational& r);
template <>
inline Rational scalar_from_rational<Rational>(const Rational& r) {
  return r;
}
template <>
inline BigReal scalar_from_rational<BigReal>(const Rational& r) {
  return BigReal::of(r);
}
template <>
inline Poly<Rational> scalar_from_rational<Poly<Rational>>(const Rational& r) {
  return Poly<Rational>(r);
}

template <class T>
std::vector<T> ring_product(const Space& sp, const std::vector<T>& xs, const std::vector<T>& ys) {
  const std::size_t n = sp.dim();
  std::vector<T> out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto row = sp.basis_product(i, j);
      for (std::size_t k = 0; k < n; ++k)
        if (!row[k].is_zero()) out[k] = out[k] + (xs[i] * ys[j]) * row[k];
    }
  return out;
}

// exp of a class with no degree-0 part (nilpotent in these rings).
template <class T>
std::vector<T> ring_exp(const Space& sp, const std::vector<T>& x) {
  const std::size_t n = sp.dim();
  std::vector<T> out(n), power(n);
  out[0] = scalar_from_rational<T>(Rational(1));
  power = out;
  // Positive degrees are >= 2 and the top degree is 2 * dim_C, so dim_C
  // factors suffice.
  const int steps = sp.id == SpaceId::Projective ? sp.N : 6;
  Rational inv_factorial(1);
  for (int k = 1; k <= steps; ++k) {
    power = ring_product(sp, power, x);
    inv_factorial /= Rational(k);
    for (std::size_t i = 0; i < n; ++i) out[i] = out[i] + power[i] * inv_factorial;
  }
  return out;
}

// ---- characteristic classes ------------------------------------------------

// Gamma-type class with full limit zeta values, at the working precision.
std::vector<BigReal> gamma_class(const Space& sp, long prec_bits = 0);

// Finite-cutoff analogue: exp(sum_{m>=1} (-1)^m (m-1)! zeta_n(m) ch_m) with
// partial single zeta values at cutoff n; exact.
std::vector<Rational> loop_euler_class(const Space& sp, long n);

// ---- quantum multiplication by c1 ------------------------------------------

// Projective space: (N+1) x (N+1) matrix of c1 = (N+1) h acting with
// h * h^N = q.  The eight-dimensional model: the 8 x 8 matrix with the
// degree-six symbol slot set to 8 * chi (the model's own basis value
// corresponds to chi = -1).
Matrix<Rational> c1_matrix(const Space& sp, const Rational& q, const Rational& chi = Rational(-1));

// The four-dimensional parametrized block attached to the odd sector.
Matrix<Rational> y_block_matrix(const Rational& q);

// Grading matrices mu = diag(deg/2 - dim_C/2) entering the connections.
Matrix<Rational> grading_matrix(const Space& sp);
Matrix<Rational> y_block_grading(int m); // diag((m-6)/2 + j), j = 0..3

} // namespace qh
