#include "qh/verify.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "qh/bigreal.hpp"
#include "qh/cohmodel.hpp"
#include "qh/config.hpp"
#include "qh/dmod.hpp"
#include "qh/gammalimit.hpp"
#include "qh/jfun.hpp"
#include "qh/matrix.hpp"
#include "qh/mzv.hpp"
#include "qh/peaks.hpp"
#include "qh/poly.hpp"
#include "qh/ratfun.hpp"
#include "qh/rational.hpp"

namespace qh::verify {

namespace {

std::string sci(const BigReal& v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3e", v.to_double());
  return buf;
}

void add_row(CriterionReport& rep, std::string id, bool pass, std::string detail,
             bool gated = true) {
  rep.rows.push_back(CheckRow{std::move(id), std::move(detail), pass, gated});
  if (gated) rep.pass = rep.pass && pass;
}

// ---------------------------------------------------------------------------
// 1. The eight one-point descendant families: recursion vs closed forms.
// ---------------------------------------------------------------------------
CriterionReport criterion_descendants() {
  CriterionReport rep{1, criterion_name(1), {}, true, 0.0};
  for (int k = 0; k <= 3; ++k)
    for (int delta = 0; delta <= 1; ++delta) {
      long mismatches = 0;
      for (long d = 1; d <= 8; ++d) {
        jfun::DescendantKey key{.d = d, .k = k, .delta = delta};
        if (jfun::desc_invariant(key) != jfun::desc_closed_form(key)) ++mismatches;
      }
      add_row(rep, "descendants/closed-form/k=" + std::to_string(k) + ",vol=" + std::to_string(delta),
              mismatches == 0,
              mismatches == 0 ? "recursion == closed form, d = 1..8, exact"
                              : std::to_string(mismatches) + " mismatches in d = 1..8");
    }
  // psi^(2d-2) paired with a^3*Vol gives 8/d!^2; the full volume class 1/d!^2.
  bool top_ok = true, vol_ok = true;
  for (long d = 1; d <= 10; ++d) {
    jfun::GradedValue v = jfun::desc_invariant(jfun::DescendantKey{.d = d, .k = 3, .delta = 1});
    Rational inv_fact2 = Rational(1) / jfun::factorial_sq(d);
    top_ok = top_ok && v.chi.is_zero() && v.main == Rational(8) * inv_fact2;
    vol_ok = vol_ok && v.main * Rational(1, 8) == inv_fact2;
  }
  add_row(rep, "descendants/a3vol-family", top_ok, "value 8/d!^2, d = 1..10, exact");
  add_row(rep, "descendants/volume-family", vol_ok, "value 1/d!^2, d = 1..10, exact");
  return rep;
}

// ---------------------------------------------------------------------------
// 2. J-coefficient assembly vs the independent weak-sum formulas.
// ---------------------------------------------------------------------------
CriterionReport criterion_jfun() {
  CriterionReport rep{2, criterion_name(2), {}, true, 0.0};
  long mismatches = 0;
  for (long d = 1; d <= 8; ++d)
    if (!(jfun::twistor_j_normalized(d) == jfun::twistor_j_sum_formula(d))) ++mismatches;
  add_row(rep, "jfun/assembly-vs-weak-sums", mismatches == 0,
          mismatches == 0 ? "all 8 coefficients agree, d = 1..8, exact"
                          : std::to_string(mismatches) + " degrees disagree");
  bool period_ok = true;
  for (long d = 1; d <= 10; ++d)
    period_ok = period_ok && jfun::quantum_period_twistor(d) == Rational(1) / jfun::factorial_sq(d);
  add_row(rep, "jfun/point-pairing", period_ok, "<J_d, pt> = 1/d!^2, d = 1..10, exact");
  return rep;
}

// ---------------------------------------------------------------------------
// 3. Projective spaces: normalized J equals the cutoff Euler-class inverse.
// ---------------------------------------------------------------------------
CriterionReport criterion_cpn_j() {
  CriterionReport rep{3, criterion_name(3), {}, true, 0.0};
  for (int N = 1; N <= 6; ++N) {
    long mismatches = 0;
    Space sp = Space::projective(N);
    for (long n = 1; n <= 25; ++n)
      if (jfun::cpn_j_normalized(N, n) != loop_euler_class(sp, n)) ++mismatches;
    add_row(rep, "cpn/j-vs-euler-class/N=" + std::to_string(N), mismatches == 0,
            mismatches == 0 ? "n = 1..25, exact" : std::to_string(mismatches) + " cutoffs disagree");
  }
  return rep;
}

// ---------------------------------------------------------------------------
// 4. Harmonic-sum algebra: expansions, products, and limit identities.
// ---------------------------------------------------------------------------
std::vector<mzv::Index> compositions_up_to(int wmax) {
  std::vector<mzv::Index> out;
  mzv::Index cur;
  std::function<void(int)> rec = [&](int remaining) {
    if (!cur.empty()) out.push_back(cur);
    for (int next = 1; next <= remaining; ++next) {
      cur.push_back(next);
      rec(remaining - next);
      cur.pop_back();
    }
  };
  rec(wmax);
  return out;
}

int weight_of(const mzv::Index& idx) {
  int w = 0;
  for (int s : idx) w += s;
  return w;
}

CriterionReport criterion_mzv() {
  CriterionReport rep{4, criterion_name(4), {}, true, 0.0};
  const std::vector<mzv::Index> comps = compositions_up_to(5);

  long bad_expand = 0;
  for (const mzv::Index& idx : comps) {
    const auto expansion = mzv::expand_weak(idx);
    for (long d = 1; d <= 15; ++d) {
      Rational rhs;
      for (const auto& term : expansion) rhs += term.second * mzv::strict_exact(term.first, d);
      if (mzv::weak_exact(idx, d) != rhs) ++bad_expand;
    }
  }
  add_row(rep, "mzv/weak-expansion", bad_expand == 0,
          "all " + std::to_string(comps.size()) + " compositions of weight <= 5, d = 1..15, exact");

  long bad_prod = 0, pairs = 0;
  for (const mzv::Index& a : comps)
    for (const mzv::Index& b : comps) {
      if (weight_of(a) + weight_of(b) > 5) continue;
      ++pairs;
      const auto expansion = mzv::strict_product(a, b);
      for (long d = 1; d <= 15; ++d) {
        Rational rhs;
        for (const auto& term : expansion) rhs += term.second * mzv::strict_exact(term.first, d);
        if (mzv::strict_exact(a, d) * mzv::strict_exact(b, d) != rhs) ++bad_prod;
      }
    }
  add_row(rep, "mzv/stuffle-product", bad_prod == 0,
          "all " + std::to_string(pairs) + " index pairs of total weight <= 5, d = 1..15, exact");

  // Limit identities at cutoff 10^4, all within 10*ln(n)^2/n.
  const long n = 10000;
  mzv::SweepRequest req;
  req.strict = {{3}, {2, 1}, {5}, {2, 3}, {3, 2}, {4, 1},
                {3, 3}, {4, 2}, {2, 2, 2}, {2, 3, 1}, {3, 2, 1}};
  req.checkpoints = {n};
  const auto swept = mzv::sweep(req).strict.at(n);
  const auto z = [&](std::initializer_list<int> ix) { return swept.at(mzv::Index(ix)); };
  const BigReal lnn = BigReal::of(n).log();
  const BigReal tol = BigReal::of(10L) * lnn * lnn / BigReal::of(n);

  const BigReal d1 = (z({2, 1}) - z({3})).abs();
  add_row(rep, "mzv/depth2-collapse", d1 <= tol,
          "|S(2,1) - S(3)| = " + sci(d1) + " vs bound " + sci(tol) + " at n = 10^4");
  const BigReal d2 = (z({2, 3}) + z({3, 2}) + z({4, 1}) - z({5})).abs();
  add_row(rep, "mzv/weight5-sum", d2 <= tol,
          "|S(2,3)+S(3,2)+S(4,1) - S(5)| = " + sci(d2) + " vs bound " + sci(tol));
  const BigReal d3 = (z({3, 3}) + z({4, 2}) - z({2, 2, 2}) - z({2, 3, 1}) - z({3, 2, 1})).abs();
  add_row(rep, "mzv/weight6-cyclic", d3 <= tol,
          "|S(3,3)+S(4,2) - S(2,2,2)-S(2,3,1)-S(3,2,1)| = " + sci(d3) + " vs bound " + sci(tol));
  return rep;
}

// ---------------------------------------------------------------------------
// 5. Apery limits of the 8-dimensional model at n = 10^5, plus the exact
//    reductions of the R3/R5/R6 rows for n <= 50.
// ---------------------------------------------------------------------------
CriterionReport criterion_apery() {
  CriterionReport rep{5, criterion_name(5), {}, true, 0.0};
  const long n = 100000, n_half = 50000;
  const auto r_hi = gammalimit::r_big(n);
  const auto r_lo = gammalimit::r_big(n_half);
  const gammalimit::TwistorTargets tg = gammalimit::twistor_targets();

  const BigReal lnn = BigReal::of(n).log();
  const BigReal nsq = BigReal::of(n) * BigReal::of(n);
  const BigReal tol_fixed = BigReal::of(Rational(1, 10000));
  const BigReal tol_ln = BigReal::of(10L) * lnn / nsq;
  const BigReal tol_ln2 = BigReal::of(10L) * lnn * lnn / nsq;

  struct RowSpec {
    const char* id;
    std::size_t ri;    // 0-based R index
    std::size_t slot;  // model slot
    const BigReal* target;
    const BigReal* tol;
  };
  const RowSpec spec[] = {
      {"apery/R1:a", 0, 1, &tg.a1, &tol_fixed},
      {"apery/R2:a^2", 1, 2, &tg.a2, &tol_fixed},
      {"apery/R3:a^3", 2, 3, &tg.a3, &tol_ln},
      {"apery/R3:x", 2, 4, &tg.chi, &tol_ln},
      {"apery/R4:a*x", 3, 5, &tg.achi, &tol_ln},
      {"apery/R5:a^2*x", 4, 6, &tg.a2chi, &tol_ln2},
      {"apery/R6:a^3*x", 5, 7, &tg.a3chi, &tol_ln2},
  };
  for (const RowSpec& s : spec) {
    const BigReal dev = (r_hi[s.ri][s.slot] - *s.target).abs();
    add_row(rep, s.id, dev <= *s.tol,
            "deviation " + sci(dev) + " vs bound " + sci(*s.tol) + " at n = 10^5");
  }
  // Informational: one 1/n-elimination step on the slow rows (does not gate).
  const Rational c2(n, n - n_half), c1(n_half, n - n_half);
  for (const RowSpec& s : spec) {
    if (s.slot != 4 && s.slot != 5 && s.slot != 7) continue;
    const BigReal est = r_hi[s.ri][s.slot] * c2 - r_lo[s.ri][s.slot] * c1;
    const BigReal dev = (est - *s.target).abs();
    add_row(rep, std::string("apery/richardson/") + (s.id + 6), dev <= *s.tol,
            "extrapolated deviation " + sci(dev) + " vs bound " + sci(*s.tol), false);
  }

  // Exact reductions for n <= 50 (strict-sum forms of the R3, R5, R6 rows).
  const auto const_of = [](const gammalimit::LogPoly& p) {
    return p.is_zero() ? Rational(0) : p.coeff(0);
  };
  long bad3 = 0, bad5 = 0, bad6 = 0;
  for (long m = 1; m <= 50; ++m) {
    const auto rx = gammalimit::r_exact(m);
    const auto [a3, chi3] = gammalimit::r3_reduction(m);
    if (const_of(rx[2][3]) != a3 || const_of(rx[2][4]) != chi3) ++bad3;
    if (const_of(rx[4][6]) != gammalimit::r5_reduction(m)) ++bad5;
    if (const_of(rx[5][7]) != gammalimit::r6_reduction(m)) ++bad6;
  }
  add_row(rep, "apery/exact-reduction/R3", bad3 == 0, "n = 1..50, rational equality");
  add_row(rep, "apery/exact-reduction/R5", bad5 == 0, "n = 1..50, rational equality");
  add_row(rep, "apery/exact-reduction/R6", bad6 == 0, "n = 1..50, rational equality");
  return rep;
}

// ---------------------------------------------------------------------------
// 6. Projective-space Gamma limit at n = 10^5, per coefficient.
// ---------------------------------------------------------------------------
CriterionReport criterion_cpn_gamma() {
  CriterionReport rep{6, criterion_name(6), {}, true, 0.0};
  const BigReal tol = BigReal::of(Rational(1, 1000));
  for (int N : {2, 3}) {
    const gammalimit::LimitReport lr = gammalimit::limit_report_cpn(N, 100000, tol);
    for (const auto& row : lr.rows)
      add_row(rep, "cpn-gamma/N=" + std::to_string(N) + "/" + row.id, row.pass,
              "deviation " + sci(row.deviation) + " vs bound " + sci(row.tolerance) +
                  " at n = 10^5");
  }
  return rep;
}

// ---------------------------------------------------------------------------
// 7. Peak concentration of the quantum-period series (kappa = 2, h = 1).
// ---------------------------------------------------------------------------
CriterionReport criterion_peaks() {
  CriterionReport rep{7, criterion_name(7), {}, true, 0.0};
  const auto p = peaks::series_params({}, {}, {Rational(1), Rational(1)},
                                      {Rational(1), Rational(1)});
  const Rational nu(2, 5);
  const BigReal thresh = BigReal::of(Rational(1, 1000));

  const peaks::TailReport t3 = peaks::tail_report(p, BigReal::of(1000L), nu);
  const peaks::TailReport t4 = peaks::tail_report(p, BigReal::of(10000L), nu);
  const peaks::TailReport t5 = peaks::tail_report(p, BigReal::of(100000L), nu);

  add_row(rep, "peaks/head-threshold", t4.head_ratio < thresh,
          "head ratio " + sci(t4.head_ratio) + " vs bound 1.000e-03 at x = 10^4");
  add_row(rep, "peaks/tail-threshold", t4.tail_ratio < thresh,
          "tail ratio " + sci(t4.tail_ratio) + " vs bound 1.000e-03 at x = 10^4");
  add_row(rep, "peaks/head-decreasing",
          t3.head_ratio > t4.head_ratio && t4.head_ratio > t5.head_ratio,
          "head ratios " + sci(t3.head_ratio) + " -> " + sci(t4.head_ratio) + " -> " +
              sci(t5.head_ratio) + " over x = 10^3, 10^4, 10^5");
  add_row(rep, "peaks/tail-decreasing",
          t3.tail_ratio > t4.tail_ratio && t4.tail_ratio > t5.tail_ratio,
          "tail ratios " + sci(t3.tail_ratio) + " -> " + sci(t4.tail_ratio) + " -> " +
              sci(t5.tail_ratio) + " over the same grid");

  const auto defect = [&](long x) {
    return peaks::peaking_defect(p, BigReal::of(x),
                                 peaks::ScalingSequence(peaks::ScalingKind::Harmonic), 1);
  };
  const BigReal d3 = defect(1000), d4 = defect(10000), d5 = defect(100000);
  add_row(rep, "peaks/defect-decreasing", d3 > d4 && d4 > d5,
          "defects " + sci(d3) + " -> " + sci(d4) + " -> " + sci(d5) + " over the same grid");

  const BigReal stokes = peaks::stokes_ratio(p, BigReal::of(1000000L));
  const BigReal sdev = (stokes - BigReal::of(1L)).abs();
  add_row(rep, "peaks/stokes-normalization", sdev <= BigReal::of(Rational(1, 50)),
          "|ratio - 1| = " + sci(sdev) + " vs bound 2.000e-02 at x = 10^6");
  return rep;
}

// ---------------------------------------------------------------------------
// 8. Connection classification: printed operators, irregularity, verdicts.
// ---------------------------------------------------------------------------
CriterionReport criterion_dmod() {
  CriterionReport rep{8, criterion_name(8), {}, true, 0.0};
  using dmod::RF;
  const auto rf = [](const char* s) { return parse_rational_function(s); };
  const auto e0 = [](std::size_t dim) {
    std::vector<RF> v(dim);
    v[0] = RF(1);
    return v;
  };

  const dmod::FormalConnection y = dmod::y_block_connection(Rational(1));
  const dmod::DiffOperator L = dmod::associated_operator(y, e0(4));
  const bool l_ok = L.order == 4 && L.coeffs[3].is_zero() && L.coeffs[2] == rf("-8/u^2") &&
                    L.coeffs[1] == rf("16/u^2") && L.coeffs[0] == rf("16/u^4-16/u^2");
  add_row(rep, "dmod/operator-quartic", l_ok, dmod::operator_str(L));
  add_row(rep, "dmod/operator-quartic-irr", dmod::irregularity(L) == 4,
          "irregularity " + std::to_string(dmod::irregularity(L)) + ", expected 4");

  const dmod::FormalConnection yt = dmod::twist(y, Rational(-2));
  const dmod::DiffOperator Lp = dmod::associated_operator(yt, e0(4));
  const bool lp_ok = Lp.order == 4 && Lp.coeffs[3] == rf("-8/u") &&
                     Lp.coeffs[2] == rf("16/u^2+12/u") && Lp.coeffs[1] == rf("-32/u^2-8/u") &&
                     Lp.coeffs[0] == rf("2/u+12/u^2");
  add_row(rep, "dmod/operator-twisted", lp_ok, dmod::operator_str(Lp));
  add_row(rep, "dmod/operator-twisted-irr", dmod::irregularity(Lp) == 2,
          "irregularity " + std::to_string(dmod::irregularity(Lp)) + ", expected 2");

  const dmod::DiffOperator tb = dmod::parse_operator("d2:1; d1:1/u^2; d0:u^3");
  add_row(rep, "dmod/textbook-irr", dmod::irregularity(tb) == 2,
          "irregularity " + std::to_string(dmod::irregularity(tb)) + ", expected 2");

  const dmod::ExpTypeReport ry = dmod::exp_type_report(y);
  add_row(rep, "dmod/odd-block-verdict",
          ry.verdict == "unramified exponential type" && ry.untwisted_irr == 4,
          "untwisted irregularity " + std::to_string(ry.untwisted_irr) + ", verdict: " + ry.verdict);

  for (const Rational& chi : {Rational(1), Rational(-2), Rational(-13)}) {
    const dmod::FormalConnection main = dmod::quantum_connection(Space::twistor(), Rational(1), chi);
    const dmod::ExpTypeReport rm = dmod::exp_type_report(main);
    bool ok = rm.untwisted_irr == 8 && rm.eigenvalues.size() == 2 &&
              rm.verdict == "unramified exponential type";
    for (const auto& ev : rm.eigenvalues)
      ok = ok && ev.multiplicity == 4 && ev.twisted_irr == 4 && ev.expected == 4 &&
           ev.shifted_leading_invertible;
    add_row(rep, "dmod/main-block/chi=" + chi.str(), ok,
            "untwisted irregularity " + std::to_string(rm.untwisted_irr) +
                ", twisted 4 + 4, verdict: " + rm.verdict);
  }

  // Irregularity is independent of the cyclic vector (three witnesses each).
  bool cyc_ok = true;
  int found = 0;
  for (const auto& cand : dmod::default_candidates(4)) {
    if (dmod::krylov_rank(y, cand) != 4) continue;
    cyc_ok = cyc_ok && dmod::irregularity(dmod::associated_operator(y, cand)) == 4;
    if (++found == 3) break;
  }
  cyc_ok = cyc_ok && found == 3;
  const dmod::FormalConnection main1 = dmod::quantum_connection(Space::twistor(), Rational(1), Rational(1));
  found = 0;
  for (const auto& cand : dmod::default_candidates(8)) {
    if (dmod::krylov_rank(main1, cand) != 8) continue;
    cyc_ok = cyc_ok && dmod::irregularity(dmod::associated_operator(main1, cand)) == 8;
    if (++found == 3) break;
  }
  cyc_ok = cyc_ok && found == 3;
  add_row(rep, "dmod/cyclic-invariance", cyc_ok,
          "3 cyclic vectors on each block reproduce irregularity 4 and 8");

  // ... and independent of constant basis changes. The 4-dim block gets three
  // dense seeded changes with the full classification re-run; the 8-dim block
  // gets three structured invertible changes (conjugating a dense random 8x8
  // keeps the answer but pushes the exact operator solve past the time budget).
  std::mt19937_64 rng(config().seed + 29);
  const auto random_basis = [&rng](std::size_t dim) {
    while (true) {
      Matrix<Rational> S(dim, dim);
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
          S(i, j) = Rational(static_cast<long>(rng() % 7) - 3);
      if (!S.determinant().is_zero()) return S;
    }
  };
  bool basis_ok = true;
  for (int t = 0; t < 3; ++t) {
    const dmod::ExpTypeReport r1 = dmod::exp_type_report(dmod::conjugate(y, random_basis(4)));
    basis_ok = basis_ok && r1.untwisted_irr == 4 && r1.verdict == "unramified exponential type";
  }
  Matrix<Rational> s_perm(8, 8), s_diag(8, 8);
  Matrix<Rational> s_shear = Matrix<Rational>::identity(8);
  for (std::size_t i = 0; i < 8; ++i) {
    s_perm(i, 7 - i) = Rational(1);
    s_diag(i, i) = Rational(static_cast<long>(i + 1));
  }
  s_shear(0, 7) = Rational(2);
  s_shear(3, 1) = Rational(-1);
  s_shear(6, 2) = Rational(1, 2);
  for (const Matrix<Rational>* S : {&s_perm, &s_diag, &s_shear}) {
    const dmod::FormalConnection conj = dmod::conjugate(main1, *S);
    const dmod::CyclicSearch cyc = dmod::cyclic_vector(conj);
    basis_ok = basis_ok && dmod::irregularity(dmod::associated_operator(conj, cyc.vector)) == 8;
  }
  add_row(rep, "dmod/basis-invariance", basis_ok,
          "3 basis changes per block preserve irregularity (and the 4-dim verdict)");
  return rep;
}

// ---------------------------------------------------------------------------
// 9. Structural tables: partition polynomials, characteristic polynomials,
//    and the quartic quantum relation.
// ---------------------------------------------------------------------------
CriterionReport criterion_structural() {
  CriterionReport rep{9, criterion_name(9), {}, true, 0.0};

  // Weight-i parts of exp(x_1 + ... + x_{i-1}), printed table for i <= 6.
  using Term = std::map<std::vector<int>, Rational>;
  const auto table_of = [](const gammalimit::HPolynomial& h) {
    Term t;
    for (const auto& term : h.terms) t[term.second] = term.first;
    return t;
  };
  const std::map<int, Term> expected = {
      {0, {}},
      {1, {}},
      {2, {{{2}, Rational(1, 2)}}},
      {3, {{{3, 0}, Rational(1, 6)}, {{1, 1}, Rational(1)}}},
      {4,
       {{{4, 0, 0}, Rational(1, 24)},
        {{2, 1, 0}, Rational(1, 2)},
        {{0, 2, 0}, Rational(1, 2)},
        {{1, 0, 1}, Rational(1)}}},
      {5,
       {{{5, 0, 0, 0}, Rational(1, 120)},
        {{3, 1, 0, 0}, Rational(1, 6)},
        {{1, 2, 0, 0}, Rational(1, 2)},
        {{2, 0, 1, 0}, Rational(1, 2)},
        {{1, 0, 0, 1}, Rational(1)},
        {{0, 1, 1, 0}, Rational(1)}}},
      {6,
       {{{6, 0, 0, 0, 0}, Rational(1, 720)},
        {{4, 1, 0, 0, 0}, Rational(1, 24)},
        {{2, 2, 0, 0, 0}, Rational(1, 4)},
        {{0, 3, 0, 0, 0}, Rational(1, 6)},
        {{3, 0, 1, 0, 0}, Rational(1, 6)},
        {{2, 0, 0, 1, 0}, Rational(1, 2)},
        {{1, 0, 0, 0, 1}, Rational(1)},
        {{0, 0, 2, 0, 0}, Rational(1, 2)},
        {{1, 1, 1, 0, 0}, Rational(1)},
        {{0, 1, 0, 1, 0}, Rational(1)}}},
  };
  bool h_ok = true;
  for (const auto& entry : expected)
    h_ok = h_ok && table_of(gammalimit::h_poly(entry.first)) == entry.second;
  add_row(rep, "structural/partition-polynomials", h_ok, "i = 0..6, exact term-by-term");

  // Characteristic polynomials: the quartic and its square.
  using RatPoly = Poly<Rational>;
  bool char_ok = true;
  for (const Rational& q : {Rational(1), Rational(2), Rational(1, 3)}) {
    const RatPoly quartic = RatPoly::monomial(Rational(1), 4) +
                            RatPoly::monomial(Rational(-8) * q, 2) +
                            RatPoly::monomial(Rational(16) * q * q, 0);
    char_ok = char_ok && y_block_matrix(q).charpoly() == quartic;
    char_ok = char_ok &&
              c1_matrix(Space::twistor(), q, Rational(-2)).charpoly() == quartic * quartic;
  }
  add_row(rep, "structural/characteristic-polynomials", char_ok,
          "4-dim block = quartic, 8-dim block = quartic^2, q in {1, 2, 1/3}");

  // Quartic relation on the 8-dim block: M^4 - 8q M^2 + 16q^2 acts as
  // multiplication by 8*chi*(a*Vol).
  bool rel_ok = true;
  for (const Rational& q : {Rational(1), Rational(2), Rational(1, 3)})
    for (const Rational& chi : {Rational(1), Rational(-2), Rational(-13)}) {
      const Matrix<Rational> m = c1_matrix(Space::twistor(), q, chi);
      const Matrix<Rational> m2 = m * m;
      const Matrix<Rational> lhs =
          m2 * m2 - m2 * (Rational(8) * q) + Matrix<Rational>::identity(8) * (Rational(16) * q * q);
      Matrix<Rational> ax(8, 8); // multiplication by a*Vol in the model basis
      ax(5, 0) = Rational(1);
      ax(4, 1) = Rational(4) * q;
      ax(6, 1) = Rational(1);
      ax(7, 2) = Rational(1);
      ax(6, 3) = Rational(4) * q;
      rel_ok = rel_ok && lhs == ax * (Rational(8) * chi);
    }
  add_row(rep, "structural/quartic-relation", rel_ok,
          "M^4 - 8q M^2 + 16q^2 = 8 chi (a*Vol-multiplication), q x chi grid, exact");
  return rep;
}

} // namespace

int criterion_count() { return 9; }

std::string criterion_name(int index) {
  switch (index) {
    case 1: return "descendant-families";
    case 2: return "j-coefficients";
    case 3: return "projective-j-identity";
    case 4: return "harmonic-sum-algebra";
    case 5: return "apery-limits";
    case 6: return "projective-gamma-limit";
    case 7: return "series-peaks";
    case 8: return "connection-classification";
    case 9: return "structural-tables";
    default: throw std::invalid_argument("criterion_name: index must be 1..9");
  }
}

bool criterion_selected(int index, const Options& opt) {
  switch (index) {
    case 3:
    case 6: return opt.projective;
    case 4: return opt.projective || opt.twistor;
    default:
      criterion_name(index); // validates the index
      return opt.twistor;
  }
}

CriterionReport run_criterion(int index, const Options&) {
  const auto start = std::chrono::steady_clock::now();
  CriterionReport rep;
  switch (index) {
    case 1: rep = criterion_descendants(); break;
    case 2: rep = criterion_jfun(); break;
    case 3: rep = criterion_cpn_j(); break;
    case 4: rep = criterion_mzv(); break;
    case 5: rep = criterion_apery(); break;
    case 6: rep = criterion_cpn_gamma(); break;
    case 7: rep = criterion_peaks(); break;
    case 8: rep = criterion_dmod(); break;
    case 9: rep = criterion_structural(); break;
    default: throw std::invalid_argument("run_criterion: index must be 1..9");
  }
  rep.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

std::vector<CriterionReport> run_all(const Options& opt) {
  std::vector<CriterionReport> out;
  for (int k = 1; k <= criterion_count(); ++k)
    if (criterion_selected(k, opt)) out.push_back(run_criterion(k, opt));
  return out;
}

std::string report_json(const std::vector<CriterionReport>& reports) {
  nlohmann::ordered_json root;
  root["schema"] = "qh-verify/1";
  bool all = true;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const CriterionReport& c : reports) {
    nlohmann::ordered_json jc;
    jc["index"] = c.index;
    jc["name"] = c.name;
    jc["pass"] = c.pass;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const CheckRow& r : c.rows) {
      nlohmann::ordered_json jr;
      jr["id"] = r.id;
      jr["pass"] = r.pass;
      if (!r.gated) jr["informational"] = true;
      jr["detail"] = r.detail;
      rows.push_back(std::move(jr));
    }
    jc["rows"] = std::move(rows);
    arr.push_back(std::move(jc));
    all = all && c.pass;
  }
  root["criteria"] = std::move(arr);
  root["all_pass"] = all;
  return root.dump(2);
}

} // namespace qh::verify
