#pragma once
// Laplace-peak analysis for hypergeometric-type power series
//
//   F(x) = sum_{n>=0} [ prod_r Gamma(alpha_r n + a_r) / prod_r Gamma(beta_r n + b_r) ] x^n
//
// with decay index kappa = sum(beta) − sum(alpha) >= 1, peak scale
// h = prod(alpha^alpha)·prod(beta^{−beta}), and exponent
// theta = sum(a) − sum(b) + kappa/2.  The dominant terms cluster near
// n = (h x)^{1/kappa}; window bounds N∓ = ⌊(1∓ε)(hx)^{1/kappa}⌋ with
// ε = x^{−ν} split the series mass into head (n ≤ N₋), window, and tail
// (n ≥ N₊).  Terms are evaluated through a Stirling log-Gamma with Bernoulli
// corrections, at the session working precision.

#include <string>
#include <utility>
#include <vector>

#include "qh/bigreal.hpp"
#include "qh/rational.hpp"

namespace qh::peaks {

struct PeakSeriesParams {
  std::vector<Rational> alphas, a; // numerator Gamma(alpha_r n + a_r)
  std::vector<Rational> betas, b;  // denominator Gamma(beta_r n + b_r)
  Rational kappa;                  // sum(beta) − sum(alpha)
  Rational theta;                  // sum(a) − sum(b) + kappa/2
  BigReal h;                       // prod alpha^alpha · prod beta^{−beta}
};

// Validates shapes (paired shifts), positivity of every parameter, and
// kappa >= 1 (domain_error otherwise).
PeakSeriesParams series_params(const std::vector<Rational>& alphas, const std::vector<Rational>& a,
                               const std::vector<Rational>& betas, const std::vector<Rational>& b);

// Peak estimate (h x)^{1/kappa}.
BigReal peak_location(const PeakSeriesParams& p, const BigReal& x);

// Single series term at index n (exp of the log-Gamma combination).
BigReal series_term(const PeakSeriesParams& p, const BigReal& x, long n);

struct TailWindow {
  BigReal x, eps, peak;
  long n_minus = 0, n_plus = 0; // floor((1∓eps)·peak), exactly as defined
};

// nu in [0, 1/2]; the Laplace window regime is 1/3 < nu < 1/2 (session
// default 0.4) and nu = 0 is the degenerate full-width window (N₋ = 0).
// Requires x >= 10.
TailWindow tail_window(const PeakSeriesParams& p, const BigReal& x, const Rational& nu);

struct TailReport {
  TailWindow bounds;
  BigReal head, window, tail, total; // masses; head+window+tail = total
  BigReal head_ratio, tail_ratio;
  long terms = 0; // terms summed before the cutoff rule fired
};
TailReport tail_report(const PeakSeriesParams& p, const BigReal& x, const Rational& nu);

// (head mass / total, tail mass / total).
std::pair<BigReal, BigReal> tail_ratios(const PeakSeriesParams& p, const BigReal& x,
                                        const Rational& nu);

// Subpolynomially increasing weight sequences b_n with b_n <= B·n (B = 1):
//   const1:    1, 1, 1, ...
//   harmonic:  H_n
//   symsum:    sum_{i<=j<=n} 1/(i j)   (running double harmonic sum)
//   log1p_pow: ln(1+n)^2
enum class ScalingKind { Const1, Harmonic, SymSum, Log1pPow };

class ScalingSequence {
 public:
  explicit ScalingSequence(ScalingKind kind) : kind_(kind) {}
  static ScalingSequence by_name(const std::string& name);
  ScalingKind kind() const { return kind_; }
  const char* name() const;
  Rational bound() const { return Rational(1); } // B with b_n <= B·n
  BigReal next();                                // successive b_1, b_2, ...
 private:
  ScalingKind kind_;
  long n_ = 0;
  BigReal acc1_, acc2_;
};

// Peaking defect |sum_{n>=1} a_n b_n ln(n)^k x^n − ln(f(x))^k sum_{n>=1} a_n b_n x^n| / F(x)
// with f(x) = (hx)^{1/kappa}; identically zero at k = 0.
BigReal peaking_defect(const PeakSeriesParams& p, const BigReal& x, ScalingSequence bseq, long k);

// F(x) divided by (2π)^{(1−κ)/2} κ^{−1/2} x^{(θ+1/2)/κ} exp(κ x^{1/κ}).
// Requires the unit-parameter regime (every alpha_r and beta_r equal to 1);
// otherwise UnsupportedError.
BigReal stokes_ratio(const PeakSeriesParams& p, const BigReal& x);

// Least-squares fit of ratios r_i ≈ exp(−A·x^B): regresses ln(−ln r) on ln x
// and returns (A, B).  Descriptive only; requires 0 < r_i < 1.
std::pair<BigReal, BigReal> fit_decay(const std::vector<BigReal>& xs,
                                      const std::vector<BigReal>& ratios);

// log Gamma(z) for z > 0 at the session precision (argument shift into the
// Stirling regime plus Bernoulli correction terms).
BigReal log_gamma(const BigReal& z);

} // namespace qh::peaks
