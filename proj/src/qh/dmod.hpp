#pragma once
// Formal classification of meromorphic connections d/du + A(u) at u = 0 with
// exact rational-function arithmetic: exponential twists, cyclic vectors for
// the derivation D = u·(d/du + A), associated monic operators in ∂ = u·d/du,
// irregularity numbers Irr(L) = max(0, max_i −ν(a_i)), leading-matrix
// eigenvalue splitting by successive Sylvester solves, and the resulting
// unramified-exponential-type verdicts.

#include <cstddef>
#include <string>
#include <vector>

#include "qh/cohmodel.hpp"
#include "qh/matrix.hpp"
#include "qh/ratfun.hpp"
#include "qh/rational.hpp"

namespace qh::dmod {

using RF = RationalFunction;

struct FormalConnection {
  std::size_t n = 0;
  Matrix<RF> A;      // connection matrix of d/du + A(u)
  std::string label; // provenance tag carried into reports
};

FormalConnection make_connection(Matrix<RF> A, std::string label = "");

// Pole order p = max(0, −min entry valuation) of A.
long pole_order(const FormalConnection& c);

// Quantum connections A = mu/u + (c1-multiplication)/u^2 on the model rings.
// chi is the odd-sector sample parameter; ignored for projective spaces.
FormalConnection quantum_connection(const Space& sp, const Rational& q,
                                    const Rational& chi = Rational(-1));
// Four-dimensional odd-sector block with the scalar part of the grading
// removed: A = diag(0,1,2,3)/u + C_y(q)/u^2.
FormalConnection y_block_connection(const Rational& q);

// Tensoring by the rank-one connection of exp(w/u): A ↦ A − (w/u^2)·Id.
FormalConnection twist(const FormalConnection& c, const Rational& w);
// Regular rank-one twist: A ↦ A − (w/u)·Id.
FormalConnection twist_regular(const FormalConnection& c, const Rational& w);

FormalConnection direct_sum(const FormalConnection& a, const FormalConnection& b);
// Constant gauge change: A ↦ S^{-1} A S (S invertible over the rationals).
FormalConnection conjugate(const FormalConnection& c, const Matrix<Rational>& S);

// D = u·∇ acting on column vectors: v ↦ u v' + u A v.
std::vector<RF> apply_d(const FormalConnection& c, const std::vector<RF>& v);

// Rank of the Krylov matrix [e, De, ..., D^{n-1}e] over the rational-function
// field.
std::size_t krylov_rank(const FormalConnection& c, const std::vector<RF>& e);
// Rank of [e_i, M e_i, ..., M^{n-1} e_i] for plain matrix multiplication.
std::size_t multiplication_krylov_rank(const Matrix<Rational>& M, std::size_t basis_index);

// Candidate list: standard basis vectors, the all-ones vector, then 20
// seeded random integer vectors with entries in {-3..3}.
std::vector<std::vector<RF>> default_candidates(std::size_t n);

struct CyclicSearch {
  std::vector<RF> vector;
  std::size_t candidate_index = 0; // position in the candidate list
  std::size_t max_rank = 0;        // n on success
};
CyclicSearch cyclic_vector(const FormalConnection& c);
CyclicSearch cyclic_vector(const FormalConnection& c,
                           const std::vector<std::vector<RF>>& candidates);

// Monic operator L = ∂^order + a_{order-1} ∂^{order-1} + ... + a_0.
struct DiffOperator {
  std::size_t order = 0;
  std::vector<RF> coeffs; // a_0 .. a_{order-1}
};

// Solves L e = 0 for the coefficients, given a cyclic vector e.
DiffOperator associated_operator(const FormalConnection& c, const std::vector<RF>& e);

long irregularity(const DiffOperator& L);

// Grammar "dK:rational-function; ..." with u as the variable, e.g.
// "d4:1; d2:-8/u^2; d1:16/u^2; d0:16/u^4-16/u^2".  The top term must have a
// nonzero coefficient; the operator is normalized to monic form.
DiffOperator parse_operator(const std::string& text);
std::string operator_str(const DiffOperator& L);

struct EigenGroup {
  Rational value;
  std::size_t multiplicity = 0;
};

struct LeadingDecomposition {
  long pole = 0;
  Matrix<Rational> leading; // (u^p A)|_{u=0}
  std::vector<EigenGroup> groups; // ordered by increasing eigenvalue
};

// Exact eigen-data of the leading matrix; the characteristic polynomial must
// factor over the rationals (UnsupportedError otherwise).
LeadingDecomposition leading_data(const FormalConnection& c);

struct LeadingSplit {
  LeadingDecomposition data;
  std::vector<std::size_t> group_offsets; // start index of each group block
  Matrix<RF> gauge;                       // G(u) = S·(Id + Σ_{k<=K} T_k u^k)
  Matrix<RF> transformed;                 // G^{-1} A G + G^{-1} G'
  long off_diagonal_valuation = 0;        // min valuation outside the blocks
};

// Block-diagonalizes to truncation order K (pole order 2 required; at least
// two eigenvalue groups required).
LeadingSplit leading_split(const FormalConnection& c, unsigned K);

struct EigenReport {
  Rational value;
  std::size_t multiplicity = 0;
  long twisted_irr = 0;                    // Irr after the value-killing twist
  std::size_t expected = 0;                // sum of the other multiplicities
  bool shifted_leading_invertible = false; // det(block_{j'} − value) ≠ 0 ∀ j' ≠ j
};

struct ExpTypeReport {
  std::string label;
  long pole = 0;
  std::size_t dimension = 0;
  long untwisted_irr = 0;
  std::vector<EigenReport> eigenvalues;
  bool exponential_type = false;
  std::string verdict; // "regular singular" | "unramified exponential type" | "inconclusive"
};

// Full classification run: pole order, leading eigen-data, untwisted and
// per-eigenvalue twisted irregularities, invertibility checks on the split
// blocks, and the verdict.  Pole order at least 3 is UnsupportedError.
ExpTypeReport exp_type_report(const FormalConnection& c);

} // namespace qh::dmod
