#pragma once

// Truncated nested harmonic sums in two flavours, exact and floating:
//
//   strict(d; s1,...,sk) = sum over d >= n1 > n2 > ... > nk >= 1
//                          of n1^(-s1) * ... * nk^(-sk)
//   weak(d; s1,...,sk)   = sum over d >= n1 >= n2 >= ... >= nk >= 1
//                          of the same summand
//
// In both families the FIRST exponent sits on the LARGEST summation index.
// The empty index has value 1 at every cutoff; a nonempty index at cutoff 0
// has value 0.  Both families satisfy one-step recursions in the cutoff,
//
//   strict(d; s, tail) = strict(d-1; s, tail) + d^(-s) * strict(d-1; tail)
//   weak(d; s, tail)   = weak(d-1; s, tail)   + d^(-s) * weak(d;   tail)
//
// which drive the exact cache and the floating sweep below.
//
// The quasi-shuffle algebra over these sums is implemented symbolically:
// expand_weak rewrites a weak sum as a sum of strict sums (valid at every
// cutoff), and strict_product expands a product of two strict sums (also
// valid at every cutoff d when both factors share that cutoff).
//
// limit_value estimates the d -> infinity limit: depth-1 series are summed
// to full working precision by an Euler-Maclaurin tail, deeper convergent
// series return a truncation value together with a rigorous tail bound
//   0 <= limit - value <= k * (1 + ln d)^k / ((s1 - 1) * d^(s1 - 1)).

#include <map>
#include <vector>

#include "qh/bigreal.hpp"
#include "qh/rational.hpp"

namespace qh {
namespace mzv {

using Index = std::vector<int>;

// Throws std::invalid_argument unless every exponent is >= 1.
void validate_index(const Index& idx);

// ---- exact evaluation (cutoff bounded by config().exact_crossover) --------
Rational strict_exact(const Index& idx, long d);
Rational weak_exact(const Index& idx, long d);

// Brute-force nested loops; independent of the recursions above.  Intended
// for small cutoffs in tests.
Rational strict_direct(const Index& idx, long d);
Rational weak_direct(const Index& idx, long d);

// ---- floating sweep --------------------------------------------------------
// Evaluates many indices of both families in one pass over the cutoff,
// recording values at each requested checkpoint.
struct SweepRequest {
  std::vector<Index> strict;
  std::vector<Index> weak;
  std::vector<long> checkpoints; // strictly positive; evaluated in one pass
};
struct SweepResult {
  std::map<long, std::map<Index, BigReal>> strict;
  std::map<long, std::map<Index, BigReal>> weak;
};
SweepResult sweep(const SweepRequest& req, long prec_bits = 0);

BigReal strict_big(const Index& idx, long d, long prec_bits = 0);
BigReal weak_big(const Index& idx, long d, long prec_bits = 0);

// ---- quasi-shuffle algebra -------------------------------------------------
// weak(d; idx) = sum of coeff * strict(d; key) over the expansion.
std::map<Index, Rational> expand_weak(const Index& idx);
// strict(d; a) * strict(d; b) = sum of coeff * strict(d; key).
std::map<Index, Rational> strict_product(const Index& a, const Index& b);

// ---- limits ----------------------------------------------------------------
struct LimitResult {
  BigReal value;      // lower bound of the bracket
  BigReal tail_bound; // limit lies in [value, value + tail_bound]
};
// Throws std::domain_error when s1 == 1 (divergent).  d_max == 0 picks a
// default cutoff for deep indices; depth-1 indices ignore d_max.
LimitResult limit_value(const Index& idx, long d_max = 0, long prec_bits = 0);

// Riemann zeta at integer s >= 2 via truncation plus Euler-Maclaurin tail,
// to roughly the full precision of prec_bits.
BigReal zeta_em(long s, long prec_bits = 0);

} // namespace mzv
} // namespace qh
