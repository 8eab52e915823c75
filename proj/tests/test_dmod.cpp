#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "qh/cohmodel.hpp"
#include "qh/dmod.hpp"
#include "qh/errors.hpp"
#include "qh/matrix.hpp"
#include "qh/ratfun.hpp"

using namespace qh;
using dmod::FormalConnection;
using dmod::RF;

namespace {

RF rf(const std::string& s) { return parse_rational_function(s); }

std::vector<RF> basis_vec(std::size_t n, std::size_t i) {
  std::vector<RF> v(n);
  v[i] = RF(1);
  return v;
}

FormalConnection diag_over_u(const std::vector<Rational>& d, long upow) {
  Matrix<RF> a(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i)
    if (!d[i].is_zero()) a(i, i) = RF::u_power(d[i], upow);
  return dmod::make_connection(std::move(a));
}

} // namespace

TEST_CASE("connection constructors and pole orders") {
  const FormalConnection y = dmod::y_block_connection(Rational(1));
  REQUIRE(y.n == 4);
  REQUIRE(dmod::pole_order(y) == 2);
  REQUIRE(y.A(0, 1) == rf("4/u^2"));
  REQUIRE(y.A(1, 0) == rf("1/u^2"));
  REQUIRE(y.A(1, 1) == rf("1/u"));
  REQUIRE(y.A(3, 3) == rf("3/u"));
  REQUIRE(y.A(0, 0).is_zero());

  const FormalConnection main = dmod::quantum_connection(Space::twistor(), Rational(1), Rational(-13));
  REQUIRE(main.n == 8);
  REQUIRE(dmod::pole_order(main) == 2);
  REQUIRE(main.A(0, 0) == rf("-3/u"));     // grading of the unit class
  REQUIRE(main.A(4, 4).is_zero());          // middle-degree class has zero weight
  REQUIRE(main.A(5, 3) == rf("-104/u^2")); // 8*chi coupling into the x-chain
  REQUIRE(main.A(7, 7) == rf("3/u"));

  const FormalConnection proj = dmod::quantum_connection(Space::projective(3), Rational(1));
  REQUIRE(proj.n == 4);
  REQUIRE(proj.A(1, 0) == rf("4/u^2"));
  REQUIRE(proj.A(0, 3) == rf("4/u^2"));
  REQUIRE(proj.A(0, 0) == rf("-3/2/u"));

  REQUIRE(dmod::pole_order(diag_over_u({Rational(1), Rational(2)}, -1)) == 1);
  REQUIRE(dmod::pole_order(diag_over_u({Rational(1)}, 3)) == 0);
  REQUIRE(dmod::pole_order(diag_over_u({Rational(1)}, -3)) == 3);
  REQUIRE(dmod::pole_order(dmod::make_connection(Matrix<RF>(2, 2))) == 0);
}

TEST_CASE("exponential twists act on the diagonal and invert exactly") {
  const FormalConnection y = dmod::y_block_connection(Rational(1));

  REQUIRE(dmod::twist(y, Rational(0)).A == y.A);

  const Rational w(5, 3);
  REQUIRE(dmod::twist(dmod::twist(y, w), -w).A == y.A);

  const FormalConnection t = dmod::twist(y, Rational(-2));
  REQUIRE(t.A(1, 1) == rf("1/u") + rf("2/u^2"));

  // Leading matrix of the twisted block: spectrum shifts from {-2,-2,2,2} to
  // {0,0,4,4}.
  const dmod::LeadingDecomposition ld = dmod::leading_data(t);
  REQUIRE(ld.pole == 2);
  REQUIRE(ld.groups.size() == 2);
  REQUIRE(ld.groups[0].value == Rational(0));
  REQUIRE(ld.groups[0].multiplicity == 2);
  REQUIRE(ld.groups[1].value == Rational(4));
  REQUIRE(ld.groups[1].multiplicity == 2);

  const FormalConnection r = dmod::twist_regular(y, Rational(1));
  REQUIRE(r.A(0, 0) == rf("-1/u"));
  REQUIRE(r.A(1, 1).is_zero());
  REQUIRE(dmod::twist_regular(r, Rational(-1)).A == y.A);
}

TEST_CASE("derivation orbit of the odd-sector block") {
  const FormalConnection y = dmod::y_block_connection(Rational(1));
  const std::vector<RF> e = basis_vec(4, 0);

  const std::vector<RF> d1 = dmod::apply_d(y, e);
  REQUIRE(d1[0].is_zero());
  REQUIRE(d1[1] == rf("1/u"));
  REQUIRE(d1[2].is_zero());
  REQUIRE(d1[3].is_zero());

  const std::vector<RF> d2 = dmod::apply_d(y, d1);
  REQUIRE(d2[0] == rf("4/u^2"));
  REQUIRE(d2[1].is_zero());
  REQUIRE(d2[2] == rf("1/u^2"));
  REQUIRE(d2[3].is_zero());

  const std::vector<RF> d3 = dmod::apply_d(y, d2);
  REQUIRE(d3[0] == rf("-8/u^2"));
  REQUIRE(d3[1] == rf("4/u^3"));
  REQUIRE(d3[2].is_zero());
  REQUIRE(d3[3] == rf("1/u^3"));

  REQUIRE(dmod::krylov_rank(y, e) == 4);
}

TEST_CASE("krylov ranks distinguish multiplication span from derivation span") {
  for (const Rational& chi : {Rational(1), Rational(-2), Rational(-13)}) {
    CAPTURE(chi.str());
    // Classical multiplication (q=0) from the unit class spans only 7 of 8
    // directions: the orbit 1 -> a -> a^2 -> a^3 -> 8*chi*(a*x) -> ... never
    // reaches the bare x class.
    REQUIRE(dmod::multiplication_krylov_rank(c1_matrix(Space::twistor(), Rational(0), chi), 0) == 7);
    // With the deformed product (q=1) the orbit does reach x: the even and
    // odd Krylov blocks are triangular with determinants 64*chi^2 and
    // 1024*chi^2, so the multiplication span is already full...
    REQUIRE(dmod::multiplication_krylov_rank(c1_matrix(Space::twistor(), Rational(1), chi), 0) == 8);
    // ...and the derivation D reaches the full space as well.
    const FormalConnection main = dmod::quantum_connection(Space::twistor(), Rational(1), chi);
    REQUIRE(dmod::krylov_rank(main, basis_vec(8, 0)) == 8);
  }
  REQUIRE(dmod::multiplication_krylov_rank(y_block_matrix(Rational(1)), 0) == 4);
}

TEST_CASE("cyclic vector search walks the candidate list") {
  const FormalConnection y = dmod::y_block_connection(Rational(1));
  const dmod::CyclicSearch cy = dmod::cyclic_vector(y);
  REQUIRE(cy.candidate_index == 0); // first basis vector already cyclic
  REQUIRE(cy.max_rank == 4);

  const FormalConnection main = dmod::quantum_connection(Space::twistor(), Rational(1), Rational(1));
  REQUIRE(dmod::cyclic_vector(main).candidate_index == 0);

  // Basis vectors are eigenvectors here, so the search must fall through to
  // the all-ones candidate.
  const FormalConnection reg = diag_over_u({Rational(1), Rational(2)}, -1);
  const dmod::CyclicSearch cr = dmod::cyclic_vector(reg);
  REQUIRE(cr.candidate_index == 2);
  REQUIRE(cr.max_rank == 2);
  REQUIRE(cr.vector[0] == RF(1));
  REQUIRE(cr.vector[1] == RF(1));

  // A connection with zero matrix has no cyclic vector among constants: the
  // search exhausts its budget and reports the best rank.
  const FormalConnection flat = dmod::make_connection(Matrix<RF>(2, 2));
  REQUIRE_THROWS_WITH_AS(dmod::cyclic_vector(flat), doctest::Contains("max Krylov rank 1 of 2"),
                         std::domain_error);

  REQUIRE_THROWS_AS(dmod::cyclic_vector(y, {}), std::invalid_argument);
  REQUIRE_THROWS_AS(dmod::cyclic_vector(y, {std::vector<RF>(4)}), std::domain_error);
}

TEST_CASE("associated operators reproduce the printed forms") {
  const FormalConnection y = dmod::y_block_connection(Rational(1));
  const dmod::DiffOperator L = dmod::associated_operator(y, basis_vec(4, 0));
  REQUIRE(L.order == 4);
  REQUIRE(L.coeffs[3].is_zero());
  REQUIRE(L.coeffs[2] == rf("-8/u^2"));
  REQUIRE(L.coeffs[1] == rf("16/u^2"));
  REQUIRE(L.coeffs[0] == rf("16/u^4-16/u^2"));
  REQUIRE(dmod::irregularity(L) == 4);

  const FormalConnection yt = dmod::twist(y, Rational(-2));
  const dmod::DiffOperator Lp = dmod::associated_operator(yt, basis_vec(4, 0));
  REQUIRE(Lp.order == 4);
  REQUIRE(Lp.coeffs[3] == rf("-8/u"));
  REQUIRE(Lp.coeffs[2] == rf("16/u^2+12/u"));
  REQUIRE(Lp.coeffs[1] == rf("-32/u^2-8/u"));
  REQUIRE(Lp.coeffs[0] == rf("2/u+12/u^2"));
  REQUIRE(dmod::irregularity(Lp) == 2);

  // One-dimensional regular connection c/u: D e = c e forces the operator
  // with constant term -c.
  Matrix<RF> one(1, 1);
  one(0, 0) = rf("3/u");
  const dmod::DiffOperator L1 = dmod::associated_operator(dmod::make_connection(one), {RF(1)});
  REQUIRE(L1.order == 1);
  REQUIRE(L1.coeffs[0] == RF(-3));
  REQUIRE(dmod::operator_str(L1) == "d1:1; d0:-3");
  REQUIRE(dmod::irregularity(L1) == 0);

  // Non-cyclic vectors make the linear system singular.
  REQUIRE_THROWS_AS(dmod::associated_operator(y, std::vector<RF>(4)), SingularMatrix);
}

TEST_CASE("operator grammar and irregularity") {
  const dmod::DiffOperator text = dmod::parse_operator("d2:1; d1:1/u^2; d0:u^3");
  REQUIRE(text.order == 2);
  REQUIRE(dmod::irregularity(text) == 2);

  const dmod::DiffOperator L =
      dmod::parse_operator("d4:1; d2:-8/u^2; d1:16/u^2; d0:16/u^4-16/u^2");
  REQUIRE(L.coeffs[3].is_zero());
  REQUIRE(L.coeffs[2] == rf("-8/u^2"));
  REQUIRE(L.coeffs[0] == rf("16/u^4-16/u^2"));
  REQUIRE(dmod::irregularity(L) == 4);

  // Round trip through the printed form.
  const dmod::DiffOperator round = dmod::parse_operator(dmod::operator_str(L));
  REQUIRE(round.order == L.order);
  REQUIRE(round.coeffs == L.coeffs);

  // Non-monic input is normalized by the top coefficient.
  const dmod::DiffOperator norm = dmod::parse_operator("d2:u; d0:1");
  REQUIRE(norm.coeffs[0] == rf("1/u"));
  REQUIRE(dmod::irregularity(norm) == 1);

  REQUIRE(dmod::irregularity(dmod::parse_operator("d2:1; d0:5")) == 0);

  REQUIRE_THROWS_AS(dmod::parse_operator(""), std::invalid_argument);
  REQUIRE_THROWS_AS(dmod::parse_operator("d0:3"), std::invalid_argument);
  REQUIRE_THROWS_AS(dmod::parse_operator("d2:0; d1:1"), std::invalid_argument);
  REQUIRE_THROWS_AS(dmod::parse_operator("x4:1"), std::invalid_argument);
  REQUIRE_THROWS_AS(dmod::parse_operator("d4"), std::invalid_argument);
  REQUIRE_THROWS_AS(dmod::parse_operator("d1:1; d1:2"), std::invalid_argument);
}

TEST_CASE("leading eigen-data factors exactly over the rationals") {
  const FormalConnection y = dmod::y_block_connection(Rational(1));
  const dmod::LeadingDecomposition ld = dmod::leading_data(y);
  REQUIRE(ld.pole == 2);
  REQUIRE(ld.leading == y_block_matrix(Rational(1)));
  REQUIRE(ld.groups.size() == 2);
  REQUIRE(ld.groups[0].value == Rational(-2));
  REQUIRE(ld.groups[0].multiplicity == 2);
  REQUIRE(ld.groups[1].value == Rational(2));
  REQUIRE(ld.groups[1].multiplicity == 2);

  for (const Rational& chi : {Rational(1), Rational(-2), Rational(-13)}) {
    const dmod::LeadingDecomposition lm =
        dmod::leading_data(dmod::quantum_connection(Space::twistor(), Rational(1), chi));
    REQUIRE(lm.groups.size() == 2);
    REQUIRE(lm.groups[0].value == Rational(-2));
    REQUIRE(lm.groups[0].multiplicity == 4);
    REQUIRE(lm.groups[1].value == Rational(2));
    REQUIRE(lm.groups[1].multiplicity == 4);
  }

  // Spectrum sqrt(2) does not factor rationally.
  Matrix<RF> irr(2, 2);
  irr(0, 1) = rf("2/u^2");
  irr(1, 0) = rf("1/u^2");
  REQUIRE_THROWS_AS(dmod::leading_data(dmod::make_connection(irr)), UnsupportedError);
}

TEST_CASE("leading split block-diagonalizes to the requested order") {
  const FormalConnection y = dmod::y_block_connection(Rational(1));

  const dmod::LeadingSplit s6 = dmod::leading_split(y, 6);
  REQUIRE(s6.group_offsets == std::vector<std::size_t>{0, 2});
  REQUIRE(s6.off_diagonal_valuation >= 5); // off-blocks vanish mod u^{K-1}

  // The transformed leading blocks carry the split eigenvalues (trace test).
  Rational tr0, tr1;
  for (std::size_t i = 0; i < 2; ++i) {
    tr0 += s6.transformed(i, i).laurent(-2, -2)[0];
    tr1 += s6.transformed(2 + i, 2 + i).laurent(-2, -2)[0];
  }
  REQUIRE(tr0 == Rational(-4));
  REQUIRE(tr1 == Rational(4));

  const dmod::LeadingSplit s3 = dmod::leading_split(y, 3);
  REQUIRE(s3.off_diagonal_valuation >= 2);

  // Already block-diagonal input: the gauge collapses to the identity.
  const dmod::LeadingSplit triv = dmod::leading_split(diag_over_u({Rational(-2), Rational(2)}, -2), 1);
  REQUIRE(triv.gauge == Matrix<RF>::identity(2));
  REQUIRE(triv.off_diagonal_valuation == std::numeric_limits<long>::max());

  // Scalar leading matrix: nothing to split.
  REQUIRE_THROWS_AS(dmod::leading_split(diag_over_u({Rational(3), Rational(3)}, -2), 4),
                    std::domain_error);
  // Pole order must be exactly 2.
  REQUIRE_THROWS_AS(dmod::leading_split(diag_over_u({Rational(1), Rational(2)}, -1), 4),
                    UnsupportedError);
  REQUIRE_THROWS_AS(dmod::leading_split(y, 0), std::invalid_argument);
}

TEST_CASE("classification verdicts") {
  // Odd-sector block: irregularity 4 untwisted, 2 after each killing twist.
  const dmod::ExpTypeReport ry = dmod::exp_type_report(dmod::y_block_connection(Rational(1)));
  REQUIRE(ry.pole == 2);
  REQUIRE(ry.untwisted_irr == 4); // (p-1)*n with invertible leading matrix
  REQUIRE(ry.eigenvalues.size() == 2);
  for (const auto& ev : ry.eigenvalues) {
    REQUIRE(ev.multiplicity == 2);
    REQUIRE(ev.twisted_irr == 2);
    REQUIRE(ev.expected == 2);
    REQUIRE(ev.shifted_leading_invertible);
  }
  REQUIRE(ry.verdict == "unramified exponential type");
  REQUIRE(ry.exponential_type);

  // Regular connection: verdict only.
  const dmod::ExpTypeReport rr = dmod::exp_type_report(diag_over_u({Rational(1), Rational(2)}, -1));
  REQUIRE(rr.pole == 1);
  REQUIRE(rr.untwisted_irr == 0);
  REQUIRE(rr.verdict == "regular singular");

  // Pole order three is out of scope.
  REQUIRE_THROWS_AS(dmod::exp_type_report(diag_over_u({Rational(1), Rational(2)}, -3)),
                    UnsupportedError);
}

TEST_CASE("classification of the eight-dimensional block is chi-independent") {
  for (const Rational& chi : {Rational(1), Rational(-2), Rational(-13)}) {
    CAPTURE(chi.str());
    const dmod::ExpTypeReport rm =
        dmod::exp_type_report(dmod::quantum_connection(Space::twistor(), Rational(1), chi));
    REQUIRE(rm.pole == 2);
    REQUIRE(rm.dimension == 8);
    REQUIRE(rm.untwisted_irr == 8);
    REQUIRE(rm.eigenvalues.size() == 2);
    for (const auto& ev : rm.eigenvalues) {
      REQUIRE(ev.multiplicity == 4);
      REQUIRE(ev.twisted_irr == 4);
      REQUIRE(ev.expected == 4);
      REQUIRE(ev.shifted_leading_invertible);
    }
    REQUIRE(rm.verdict == "unramified exponential type");
  }
}

TEST_CASE("irregularity is invariant under cyclic vector and basis changes") {
  const FormalConnection y = dmod::y_block_connection(Rational(1));

  // Three distinct cyclic vectors give (possibly different) operators with
  // one irregularity.
  int found = 0;
  for (const auto& cand : dmod::default_candidates(4)) {
    if (dmod::krylov_rank(y, cand) != 4) continue;
    REQUIRE(dmod::irregularity(dmod::associated_operator(y, cand)) == 4);
    if (++found == 3) break;
  }
  REQUIRE(found == 3);

  const FormalConnection yt = dmod::twist(y, Rational(-2));
  found = 0;
  for (const auto& cand : dmod::default_candidates(4)) {
    if (dmod::krylov_rank(yt, cand) != 4) continue;
    REQUIRE(dmod::irregularity(dmod::associated_operator(yt, cand)) == 2);
    if (++found == 3) break;
  }
  REQUIRE(found == 3);

  // Constant basis changes leave irregularity and verdict alone.
  std::mt19937_64 rng(config().seed + 17);
  int done = 0;
  while (done < 3) {
    Matrix<Rational> S(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) S(i, j) = Rational(static_cast<long>(rng() % 7) - 3);
    if (S.determinant().is_zero()) continue;
    const dmod::ExpTypeReport rep = dmod::exp_type_report(dmod::conjugate(y, S));
    REQUIRE(rep.untwisted_irr == 4);
    REQUIRE(rep.verdict == "unramified exponential type");
    ++done;
  }

  // Direct sum with a regular line: irregularity is additive (4 + 0).
  Matrix<RF> line(1, 1);
  line(0, 0) = rf("5/u");
  const FormalConnection sum = dmod::direct_sum(y, dmod::make_connection(line, "line"));
  const dmod::CyclicSearch cs = dmod::cyclic_vector(sum);
  REQUIRE(dmod::irregularity(dmod::associated_operator(sum, cs.vector)) == 4);
}
