#pragma once
// Descendant invariants of the 8-dimensional quantum model and J-function
// coefficients, computed two independent ways:
//
//   1. desc_invariant — a memoized recursion built from the divisor axiom and
//      the topological recursion relation (TRR), grounded in a handful of
//      degree-1 seed values;
//   2. desc_closed_form — evaluation of the eight printed closed-form families
//      in terms of weak nested harmonic sums S_d(...) (mzv::weak_exact).
//
// Values live in the pair ring Q ⊕ Q·chi with chi^2 = 0: every invariant of
// the model family is at most linear in the Euler-characteristic symbol chi,
// and the ring data of the family carry chi in exactly three places:
//
//   rollover    alpha^4            = -8 chi · (alpha Vol)
//   integral    ∫ alpha^6          = -64 chi
//   pairing     g^{Vol,Vol}        = +chi   (dual(Vol) = alpha^3/8 + chi·Vol)
//
// One-point invariants assemble into the J-coefficients; the assembly is
// cross-checked against the independent S_d-sum formulas (twistor_j_sum_formula).
//
// The y-sector (insertions alpha^k y for an extra class y of real degree m)
// is carried through the same recursion with its own seeds; the mixed
// y/main one-point invariants vanish identically, and the recursion proves
// this by computation rather than assumption.

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "qh/mzv.hpp"
#include "qh/poly.hpp"
#include "qh/rational.hpp"

namespace qh::jfun {

// Element of the pair ring Q ⊕ Q·chi, chi^2 = 0.
struct GradedValue {
  Rational main;
  Rational chi;

  GradedValue() = default;
  GradedValue(Rational m, Rational c) : main(std::move(m)), chi(std::move(c)) {}
  explicit GradedValue(long m) : main(m), chi(0) {}

  bool is_zero() const { return main.is_zero() && chi.is_zero(); }

  GradedValue& operator+=(const GradedValue& o) {
    main += o.main;
    chi += o.chi;
    return *this;
  }
  GradedValue& operator-=(const GradedValue& o) {
    main -= o.main;
    chi -= o.chi;
    return *this;
  }
  friend GradedValue operator+(GradedValue a, const GradedValue& b) { return a += b; }
  friend GradedValue operator-(GradedValue a, const GradedValue& b) { return a -= b; }
  friend GradedValue operator*(const GradedValue& a, const GradedValue& b) {
    // chi^2 = 0 truncation.
    return {a.main * b.main, a.main * b.chi + a.chi * b.main};
  }
  friend GradedValue operator*(const GradedValue& a, const Rational& r) {
    return {a.main * r, a.chi * r};
  }
  friend GradedValue operator/(const GradedValue& a, long n) {
    Rational inv(1, n);
    return {a.main * inv, a.chi * inv};
  }
  friend bool operator==(const GradedValue& a, const GradedValue& b) {
    return a.main == b.main && a.chi == b.chi;
  }
  friend bool operator!=(const GradedValue& a, const GradedValue& b) { return !(a == b); }
};

// Index of a descendant invariant ⟨ψ^a X₁ (, X₂)⟩_d.  The first insertion is
// alpha^k Vol^delta, or alpha^k y when `y` is set (y an extra class of real
// degree y_degree).  The optional second insertion is alpha^j Vol^delta2.
// The ψ-power a is derived from the degree axiom and is not stored:
//   one point : a = 2d + 4 − (k + 3δ)            (y: a = 2d + 4 − k − m/2)
//   two point : a = 2d + 5 − (k + 3δ₁) − (j + 3δ₂), ψ on the first insertion
// Keys whose forced ψ-power is negative (or fractional) evaluate to 0.
struct DescendantKey {
  long d = 1;
  int k = 0;
  int delta = 0;
  bool y = false;
  int y_degree = 2;
  bool has_second = false;
  int j = 0;
  int delta2 = 0;
};

// Exact value via the divisor/TRR recursion.  Throws std::invalid_argument on
// a malformed key (k or j outside 0..3, delta outside {0,1}, d < 0) and
// std::logic_error if the induction fails to ground a key (a table bug).
GradedValue desc_invariant(const DescendantKey& key);

// The eight printed one-point families evaluated through weak nested sums.
// Only one-point main-sector keys are admissible; anything else throws
// std::invalid_argument.  Families with delta = 1 are chi-free; families with
// delta = 0 are pure chi (the returned GradedValue reflects this).
GradedValue desc_closed_form(const DescendantKey& key);

// J-coefficient of the 8-dimensional model at degree d, written in the basis
// 1, alpha, alpha^2, alpha^3 with chi-corrections: alpha[j] is the
// coefficient of alpha^j and chi[j] the coefficient of chi·alpha^j·Vol.
struct TwistorJ {
  std::array<Rational, 4> alpha{};
  std::array<Rational, 4> chi{};

  friend bool operator==(const TwistorJ& a, const TwistorJ& b) {
    return a.alpha == b.alpha && a.chi == b.chi;
  }
};

// Assembled from one-point descendants via the dual-basis formula.
TwistorJ twistor_j_raw(long d);
// raw · d!^2  (the raw pt-pairing is 1/d!^2).
TwistorJ twistor_j_normalized(long d);
// Independent route: the printed S_d-sum formulas for the normalized
// coefficients.
TwistorJ twistor_j_sum_formula(long d);

// Term list (coefficient, weak-sum index) for one row of the normalized
// J-coefficient formulas; rows 0..3 are the alpha^row coefficients, rows 4..7
// the chi-parts of alpha^(row−4).  An empty index denotes the constant 1.
// Exposed so large-cutoff evaluations can reuse the exact term data with
// big-float sum values.
std::vector<std::pair<Rational, mzv::Index>> sum_formula_terms(int row);

// Complex-projective-space J-coefficient: raw = Π_{k=1..n} (h+k)^{-(N+1)} in
// Q[h]/(h^{N+1}), returned as the N+1 coefficients of 1, h, …, h^N.
// normalized = raw / (constant term), so it starts at 1.
std::vector<Rational> cpn_j_raw(int N, long n);
std::vector<Rational> cpn_j_normalized(int N, long n);

// Coefficient of t^{rn} in the quantum period ⟨J(t), pt⟩.
Rational quantum_period_cpn(int N, long n);     // 1/n!^{N+1}
Rational quantum_period_twistor(long n);        // 1/n!^2

// (d!)^2 as a Rational — the normalization factor used throughout.
Rational factorial_sq(long d);

// Reset the memo tables (test isolation); returns the number of entries
// dropped.
std::size_t engine_reset();

} // namespace qh::jfun
