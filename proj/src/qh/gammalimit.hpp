#pragma once
// Apéry-limit machinery: the quasi-homogeneous h-polynomials, the log-corrected
// R-sequences built from normalized J-coefficients, and limit reports comparing
// the R-rows against the rows of the logarithm of the Gamma-type class.
//
// The R-sequence at cutoff n is
//
//   R_i,n = [ e^{ell·log n} · J_n ]_i  −  h_i(R_1,n, …, R_{i−1,n})
//
// where ell is the degree-2 generator with unit coefficient (alpha for the
// 8-dimensional model, h for projective space; the r-th-root reparametrization
// of the series variable absorbs the Fano index), [·]_i is the weight-i part,
// and h_i is the weight-i part of exp(x_1 + … + x_{i−1}).  As n → ∞ the rows
// converge to the corresponding rows of log of the Gamma-type class.
//
// Two evaluation paths exist for the 8-dimensional model:
//   - exact (n small): log n carried as a formal variable L over exact
//     rationals; every row with i ≥ 2 is provably L-free and the L-cancellation
//     is asserted;
//   - big-float (n large): log n as a BigReal, J-coefficients from the
//     weak-sum formulas evaluated by the incremental mzv sweep.

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "qh/bigreal.hpp"
#include "qh/cohmodel.hpp"
#include "qh/poly.hpp"
#include "qh/rational.hpp"

namespace qh::gammalimit {

// Weight-i part of exp(x_1 + … + x_{i−1}), x_j of weight j.  h_0 = h_1 = 0.
struct HPolynomial {
  int i = 0;
  // (coefficient, exponents of x_1..x_{i-1}); Σ_j j·e_j = i for every term
  std::vector<std::pair<Rational, std::vector<int>>> terms;
};
HPolynomial h_poly(int i);

using LogPoly = Poly<Rational>;

// The 8-dimensional model class over a scalar T: slots 0..3 are alpha^k
// (weights 0..3) and slots 4..7 are chi·alpha^k·Vol (weights 3..6).
template <class T>
using ModelClass = std::array<T, 8>;

inline int model_weight(std::size_t slot) {
  return slot < 4 ? static_cast<int>(slot) : static_cast<int>(slot) - 1;
}

// Ring product with the family relations alpha^4 = −8 chi·alpha·Vol,
// Vol² = 0, chi² = 0.
template <class T>
ModelClass<T> model_mul(const ModelClass<T>& x, const ModelClass<T>& y) {
  ModelClass<T> out{};
  for (std::size_t i = 0; i < 4; ++i) {
    // main × main
    for (std::size_t j = 0; j < 4; ++j) {
      std::size_t s = i + j;
      if (s <= 3) {
        out[s] += x[i] * y[j];
      } else { // rollover into the chi sector (s <= 6 always)
        out[4 + (s - 3)] += (x[i] * y[j]) * Rational(-8);
      }
    }
    // main × chi (both orders); chi × chi vanishes
    for (std::size_t j = 4; j < 8; ++j) {
      std::size_t s = i + (j - 4);
      if (s <= 3) {
        out[4 + s] += x[i] * y[j];
        out[4 + s] += y[i] * x[j];
      }
    }
  }
  return out;
}

template <class T>
ModelClass<T> weight_part(const ModelClass<T>& x, int w) {
  ModelClass<T> out{};
  for (std::size_t s = 0; s < 8; ++s)
    if (model_weight(s) == w) out[s] = x[s];
  return out;
}

// e^{L·alpha} as a model class (finite: alpha powers die at weight 7).
template <class T>
ModelClass<T> exp_log_class(const T& L) {
  ModelClass<T> out{};
  T pw = scalar_from_rational<T>(Rational(1));
  for (int j = 0; j <= 6; ++j) {
    if (j <= 3)
      out[static_cast<std::size_t>(j)] += pw;
    else
      out[static_cast<std::size_t>(4 + j - 3)] += pw * Rational(-8);
    pw = (pw * L) * Rational(1, j + 1);
  }
  return out;
}

// R_1..R_6 (index 0..5) from a normalized J-class and the log value L.
template <class T>
std::array<ModelClass<T>, 6> r_all(const ModelClass<T>& j_class, const T& L) {
  ModelClass<T> g = model_mul(exp_log_class(L), j_class);
  std::array<ModelClass<T>, 6> r{};
  for (int i = 1; i <= 6; ++i) {
    ModelClass<T> acc = weight_part(g, i);
    for (const auto& [coeff, expo] : h_poly(i).terms) {
      // every h_i term (i >= 2) has at least one factor, so seed from the
      // first one instead of a synthetic unit (keeps BigReal precision intact)
      ModelClass<T> mono{};
      bool started = false;
      for (std::size_t j = 0; j < expo.size(); ++j)
        for (int rep = 0; rep < expo[j]; ++rep) {
          if (!started) {
            mono = r[j];
            started = true;
          } else {
            mono = model_mul(mono, r[j]);
          }
        }
      if (!started) continue;
      for (std::size_t s = 0; s < 8; ++s) acc[s] -= mono[s] * coeff;
    }
    r[static_cast<std::size_t>(i - 1)] = acc;
  }
  return r;
}

// Normalized J-class of the 8-dimensional model at cutoff n over T (weak-sum
// formula route).
ModelClass<Rational> twistor_j_class(long n);

// Exact path at cutoff n with formal L.  Throws std::logic_error if a row
// with i ≥ 2 retains an L-dependence.
std::array<ModelClass<LogPoly>, 6> r_exact(long n);

// Big-float path at cutoff n (weak sums via the incremental sweep).
// A nonzero prec_bits raises the session working precision for the duration
// of the call, so every intermediate is carried at least that wide.
std::array<ModelClass<BigReal>, 6> r_big(long n, long prec_bits = 0);

// Degree-2i row for either space, as a coefficient vector over the space's
// cohomology basis (zero outside degree 2i).  For projective space the row is
// (N+1)·(delta_{i,1}·log n + (−1)^i ζ_n(i)/i)·h^i with ζ_n(1) = H_n.
std::vector<BigReal> r_sequence(const Space& sp, int i, long n,
                                long prec_bits = 0);

// Exact reduction combinations (strict partial zeta values) for the i ≥ 2
// rows; these are the simplification-chain forms the exact path must match.
Rational r2_reduction(long n);                     // alpha^2 row
std::pair<Rational, Rational> r3_reduction(long n); // (alpha^3 row, chi row)
Rational r4_reduction(long n);                     // alpha·chi row
Rational r5_reduction(long n);                     // alpha^2·chi row
Rational r6_reduction(long n);                     // alpha^3·chi row

// Rows of log(Gamma-type class) for the 8-dimensional model.
struct TwistorTargets {
  BigReal a1, a2, a3, chi, achi, a2chi, a3chi;
};
TwistorTargets twistor_targets(long prec_bits = 0);

struct RRow {
  std::string id;
  BigReal estimate;
  BigReal target;
  BigReal deviation;
  BigReal tolerance;
  bool pass = false;
};
struct LimitReport {
  std::vector<RRow> rows;
  bool all_pass = true;
};

// The seven measured model rows (R1..R6 with both R3 components) against the
// log-Gamma targets.  The estimate is taken at the last schedule point; with
// richardson = true a single 1/n-elimination step combines the last two
// points:  est = (n₂·v₂ − n₁·v₁)/(n₂ − n₁).  Tolerances are
// scale · ln(n)^w / n^s with per-row (w, s) read off the slowest error tail.
LimitReport limit_report_twistor(const std::vector<long>& schedule,
                                 const Rational& tol_scale, bool richardson,
                                 long prec_bits = 0);

// Per-coefficient comparison of e^{h·log n}·(cutoff class of CP^N) against its
// Gamma-type class, at a flat per-coefficient tolerance.
LimitReport limit_report_cpn(int N, long n, const BigReal& tolerance,
                             long prec_bits = 0);

} // namespace qh::gammalimit
