#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "qh/errors.hpp"
#include "qh/peaks.hpp"
#include "qh/rational.hpp"

using namespace qh;
using peaks::PeakSeriesParams;
using peaks::ScalingKind;
using peaks::ScalingSequence;

namespace {

// F(x) = sum x^n / n!^2  (kappa = 2, h = 1, theta = -1).
PeakSeriesParams inverse_square_factorial() {
  return peaks::series_params({}, {}, {Rational(1), Rational(1)}, {Rational(1), Rational(1)});
}

// F(x) = e^x  (kappa = 1, h = 1, theta = -1/2).
PeakSeriesParams exponential_series() {
  return peaks::series_params({}, {}, {Rational(1)}, {Rational(1)});
}

BigReal br(const char* s) { return BigReal::parse(s); }

} // namespace

TEST_CASE("log_gamma matches high-precision references") {
  struct Ref {
    Rational z;
    const char* value;
  };
  // Reference values computed with mpmath at 55 digits.
  const Ref refs[] = {
      {Rational(1, 2), "0.5723649429247000870717136756765293558236474064576557858"},
      {Rational(7, 3), "0.174490430711438305231147806049263118591575649460897459"},
      {Rational(20), "39.33988418719949403622465239456738108169145720689785312"},
      {Rational(421, 4), "383.4211852973805261502923595950589078278820073924230305"},
      {Rational(3, 2), "-0.1207822376352452223455184457816472122518527279025994684"},
      {Rational(15, 4), "1.486815578593417055540581801444205025412948650163074939"},
      {Rational(50), "144.5657439463448860089184430629689715749851728473652584"},
      {Rational(1, 10), "2.252712651734205959869701646368495118615627222294953765"},
  };
  for (const auto& ref : refs) {
    CAPTURE(ref.value);
    REQUIRE(peaks::log_gamma(BigReal::of(ref.z)).close_to(br(ref.value), 45));
  }

  // Gamma(1) = Gamma(2) = 1.
  REQUIRE(peaks::log_gamma(BigReal::of(1L)).close_to(BigReal::of(0L), 45));
  REQUIRE(peaks::log_gamma(BigReal::of(2L)).close_to(BigReal::of(0L), 45));

  // Recurrence lnGamma(z+1) = lnGamma(z) + ln z.
  for (const Rational& z : {Rational(1, 3), Rational(1, 2), Rational(13, 7)}) {
    const BigReal lhs = peaks::log_gamma(BigReal::of(z + Rational(1)));
    const BigReal rhs = peaks::log_gamma(BigReal::of(z)) + BigReal::of(z).log();
    REQUIRE(lhs.close_to(rhs, 45));
  }

  REQUIRE_THROWS_AS(peaks::log_gamma(BigReal::of(0L)), std::domain_error);
  REQUIRE_THROWS_AS(peaks::log_gamma(BigReal::of(-3L)), std::domain_error);
}

TEST_CASE("series parameter validation and derived quantities") {
  const PeakSeriesParams qp = inverse_square_factorial();
  REQUIRE(qp.kappa == Rational(2));
  REQUIRE(qp.theta == Rational(-1));
  REQUIRE(qp.h.close_to(BigReal::of(1L), 48));

  const PeakSeriesParams ex = exponential_series();
  REQUIRE(ex.kappa == Rational(1));
  REQUIRE(ex.theta == Rational(-1, 2));
  REQUIRE(ex.h.close_to(BigReal::of(1L), 48));

  // Four unit denominator factors: kappa = 4, theta = -2.
  const PeakSeriesParams quartic = peaks::series_params(
      {}, {}, {Rational(1), Rational(1), Rational(1), Rational(1)},
      {Rational(1), Rational(1), Rational(1), Rational(1)});
  REQUIRE(quartic.kappa == Rational(4));
  REQUIRE(quartic.theta == Rational(-2));

  // Mixed scales: h = 2^2 * 3^{-3} = 4/27, kappa = 1, theta = -1/2.
  const PeakSeriesParams mixed =
      peaks::series_params({Rational(2)}, {Rational(1)}, {Rational(3)}, {Rational(2)});
  REQUIRE(mixed.kappa == Rational(1));
  REQUIRE(mixed.theta == Rational(-1, 2));
  REQUIRE(mixed.h.close_to(BigReal::of(Rational(4, 27)), 45));

  // kappa below 1 is rejected.
  REQUIRE_THROWS_AS(peaks::series_params({Rational(1)}, {Rational(1)}, {Rational(1)}, {Rational(1)}),
                    std::domain_error);
  REQUIRE_THROWS_AS(peaks::series_params({Rational(1), Rational(1)}, {Rational(1), Rational(1)},
                                         {Rational(1)}, {Rational(1)}),
                    std::domain_error);
  REQUIRE_THROWS_AS(peaks::series_params({}, {}, {Rational(1)}, {Rational(0)}), std::domain_error);
  REQUIRE_THROWS_AS(peaks::series_params({}, {}, {Rational(1), Rational(-1)}, {Rational(1), Rational(1)}),
                    std::domain_error);
  // Scale/shift lists must pair up.
  REQUIRE_THROWS_AS(peaks::series_params({Rational(1)}, {}, {Rational(1), Rational(1)},
                                         {Rational(1), Rational(1)}),
                    std::invalid_argument);
}

TEST_CASE("series terms and the peak estimate") {
  const PeakSeriesParams qp = inverse_square_factorial();

  // Term n = 20 at x = 3 equals 3^20 / (20!)^2 exactly (up to rounding).
  const BigReal expected =
      BigReal::of(3L).pow(20L) / BigReal::of(factorial(20)) / BigReal::of(factorial(20));
  REQUIRE(peaks::series_term(qp, BigReal::of(3L), 20).close_to(expected, 40));
  REQUIRE(peaks::series_term(qp, BigReal::of(3L), 0).close_to(BigReal::of(1L), 48));

  REQUIRE(peaks::peak_location(qp, BigReal::of(10000L)).close_to(BigReal::of(100L), 45));

  const PeakSeriesParams mixed =
      peaks::series_params({Rational(2)}, {Rational(1)}, {Rational(3)}, {Rational(2)});
  REQUIRE(peaks::peak_location(mixed, BigReal::of(100L)).close_to(BigReal::of(Rational(400, 27)), 42));

  REQUIRE_THROWS_AS(peaks::series_term(qp, BigReal::of(3L), -1), std::invalid_argument);
  REQUIRE_THROWS_AS(peaks::peak_location(qp, BigReal::of(0L)), std::domain_error);
}

TEST_CASE("window bounds follow the floor rule") {
  const PeakSeriesParams qp = inverse_square_factorial();
  const Rational nu(2, 5);

  const peaks::TailWindow w3 = peaks::tail_window(qp, BigReal::of(1000L), nu);
  REQUIRE(w3.n_minus == 29);
  REQUIRE(w3.n_plus == 33);

  const peaks::TailWindow w4 = peaks::tail_window(qp, BigReal::of(10000L), nu);
  REQUIRE(w4.n_minus == 97);
  REQUIRE(w4.n_plus == 102);

  const peaks::TailWindow w5 = peaks::tail_window(qp, BigReal::of(100000L), nu);
  REQUIRE(w5.n_minus == 313);
  REQUIRE(w5.n_plus == 319);

  // Degenerate full-width window: eps = 1.
  const peaks::TailWindow w0 = peaks::tail_window(qp, BigReal::of(1000L), Rational(0));
  REQUIRE(w0.n_minus == 0);
  REQUIRE(w0.n_plus == 63); // floor(2 * sqrt(1000))
  REQUIRE(w0.eps.close_to(BigReal::of(1L), 48));

  REQUIRE_THROWS_AS(peaks::tail_window(qp, BigReal::of(5L), nu), std::invalid_argument);
  REQUIRE_THROWS_AS(peaks::tail_window(qp, BigReal::of(1000L), Rational(3, 5)), std::invalid_argument);
  REQUIRE_THROWS_AS(peaks::tail_window(qp, BigReal::of(1000L), Rational(-1, 10)), std::invalid_argument);
}

TEST_CASE("head and tail mass ratios at the reference grid") {
  const PeakSeriesParams qp = inverse_square_factorial();
  const Rational nu(2, 5);

  struct Row {
    long x;
    const char* head;
    const char* tail;
  };
  // Reference ratios computed with mpmath.
  const Row rows[] = {
      {1000, "0.3245119321", "0.3807145268"},
      {10000, "0.3791550376", "0.3979153585"},
      {100000, "0.4243811869", "0.4180084669"},
  };

  std::vector<BigReal> heads, tails;
  for (const auto& row : rows) {
    CAPTURE(row.x);
    const peaks::TailReport rep = peaks::tail_report(qp, BigReal::of(row.x), nu);
    REQUIRE(rep.head_ratio.close_to(br(row.head), 9));
    REQUIRE(rep.tail_ratio.close_to(br(row.tail), 9));
    REQUIRE(rep.window > BigReal::of(0L));
    REQUIRE(rep.terms > rep.bounds.n_plus);
    // Mass conservation: the three buckets re-add to the total.
    REQUIRE(((rep.head + rep.window + rep.tail) / rep.total).close_to(BigReal::of(1L), 40));
    heads.push_back(rep.head_ratio);
    tails.push_back(rep.tail_ratio);
  }

  // With the fixed window exponent the window half-width in peak-deviation
  // units shrinks like x^{1/(2 kappa) - nu}, so both outer masses grow with x.
  REQUIRE(heads[0] < heads[1]);
  REQUIRE(heads[1] < heads[2]);
  REQUIRE(tails[0] < tails[1]);
  REQUIRE(tails[1] < tails[2]);

  // Totals agree with independently computed Bessel values, F(x) = I0(2 sqrt x).
  const peaks::TailReport r3 = peaks::tail_report(qp, BigReal::of(1000L), nu);
  REQUIRE((r3.total / br("147385608710016483969330449.23210205")).close_to(BigReal::of(1L), 30));
  const peaks::TailReport r4 = peaks::tail_report(qp, BigReal::of(10000L), nu);
  REQUIRE((r4.total / br("2.0396871734097246195416731267794596e+85")).close_to(BigReal::of(1L), 30));

  // tail_ratios is the (head, tail) projection of the full report.
  const auto [h, t] = peaks::tail_ratios(qp, BigReal::of(1000L), nu);
  REQUIRE(h == r3.head_ratio);
  REQUIRE(t == r3.tail_ratio);
}

TEST_CASE("degenerate full-width window isolates the constant term") {
  const PeakSeriesParams qp = inverse_square_factorial();
  const BigReal x = BigReal::of(1000L);
  const peaks::TailReport rep = peaks::tail_report(qp, x, Rational(0));
  REQUIRE(rep.bounds.n_minus == 0);
  REQUIRE(rep.head == peaks::series_term(qp, x, 0));
  REQUIRE(rep.head_ratio < BigReal::pow_si(10, -20));
  REQUIRE(((rep.head + rep.window + rep.tail) / rep.total).close_to(BigReal::of(1L), 40));
}

TEST_CASE("scaling sequences are named, increasing, and linearly bounded") {
  REQUIRE(ScalingSequence::by_name("const1").kind() == ScalingKind::Const1);
  REQUIRE(ScalingSequence::by_name("harmonic").kind() == ScalingKind::Harmonic);
  REQUIRE(ScalingSequence::by_name("symsum").kind() == ScalingKind::SymSum);
  REQUIRE(ScalingSequence::by_name("log1p_pow").kind() == ScalingKind::Log1pPow);
  REQUIRE(std::string(ScalingSequence(ScalingKind::SymSum).name()) == "symsum");
  REQUIRE_THROWS_AS(ScalingSequence::by_name("bogus"), std::invalid_argument);

  // First values: harmonic numbers H_n.
  ScalingSequence harmonic(ScalingKind::Harmonic);
  REQUIRE(harmonic.next().close_to(BigReal::of(1L), 48));
  REQUIRE(harmonic.next().close_to(BigReal::of(Rational(3, 2)), 48));
  REQUIRE(harmonic.next().close_to(BigReal::of(Rational(11, 6)), 48));
  REQUIRE(harmonic.next().close_to(BigReal::of(Rational(25, 12)), 48));

  // Double harmonic sums: 1, 7/4, 85/36.
  ScalingSequence symsum(ScalingKind::SymSum);
  REQUIRE(symsum.next().close_to(BigReal::of(1L), 48));
  REQUIRE(symsum.next().close_to(BigReal::of(Rational(7, 4)), 48));
  REQUIRE(symsum.next().close_to(BigReal::of(Rational(85, 36)), 48));

  ScalingSequence ones(ScalingKind::Const1);
  REQUIRE(ones.next() == BigReal::of(1L));
  REQUIRE(ones.next() == BigReal::of(1L));

  ScalingSequence logsq(ScalingKind::Log1pPow);
  REQUIRE(logsq.next().close_to(BigReal::of(2L).log().pow(2L), 48));
  REQUIRE(logsq.next().close_to(BigReal::of(3L).log().pow(2L), 48));

  // b_n nondecreasing and b_n <= B n with B = 1 over a long prefix.
  for (const ScalingKind kind : {ScalingKind::Const1, ScalingKind::Harmonic, ScalingKind::SymSum,
                                 ScalingKind::Log1pPow}) {
    ScalingSequence seq(kind);
    REQUIRE(seq.bound() == Rational(1));
    BigReal prev = BigReal::of(0L);
    long monotone_violations = 0, bound_violations = 0;
    for (long n = 1; n <= 30000; ++n) {
      const BigReal b = seq.next();
      if (b < prev) ++monotone_violations;
      if (b > BigReal::of(n)) ++bound_violations;
      prev = b;
    }
    CAPTURE(static_cast<int>(kind));
    REQUIRE(monotone_violations == 0);
    REQUIRE(bound_violations == 0);
  }
}

TEST_CASE("peaking defect vanishes at power zero and decays on the grid") {
  const PeakSeriesParams qp = inverse_square_factorial();

  // k = 0 compares a sum with itself: identically zero.
  REQUIRE(peaks::peaking_defect(qp, BigReal::of(1000L), ScalingSequence(ScalingKind::Const1), 0)
              .is_zero());
  REQUIRE(peaks::peaking_defect(qp, BigReal::of(1000L), ScalingSequence(ScalingKind::Harmonic), 0)
              .is_zero());

  struct Row {
    long x;
    const char* harmonic;
    const char* const1;
  };
  // Reference defects computed with mpmath (k = 1).
  const Row rows[] = {
      {1000, "0.04875293649", "0.01611363793"},
      {10000, "0.0210267619", "0.005029489486"},
      {100000, "0.008448057798", "0.001584065594"},
  };
  std::vector<BigReal> dh, dc;
  for (const auto& row : rows) {
    CAPTURE(row.x);
    const BigReal x = BigReal::of(row.x);
    const BigReal d1 = peaks::peaking_defect(qp, x, ScalingSequence(ScalingKind::Harmonic), 1);
    const BigReal d2 = peaks::peaking_defect(qp, x, ScalingSequence(ScalingKind::Const1), 1);
    REQUIRE(d1.close_to(br(row.harmonic), 9));
    REQUIRE(d2.close_to(br(row.const1), 9));
    dh.push_back(d1);
    dc.push_back(d2);
  }
  REQUIRE(dh[0] > dh[1]);
  REQUIRE(dh[1] > dh[2]);
  REQUIRE(dc[0] > dc[1]);
  REQUIRE(dc[1] > dc[2]);

  REQUIRE_THROWS_AS(peaks::peaking_defect(qp, BigReal::of(1000L), ScalingSequence(ScalingKind::Const1), -1),
                    std::invalid_argument);
}

TEST_CASE("stokes ratio approaches one in the unit-parameter regime") {
  const PeakSeriesParams qp = inverse_square_factorial();

  const BigReal one = BigReal::of(1L);
  const BigReal r4 = peaks::stokes_ratio(qp, BigReal::of(10000L));
  REQUIRE((r4 - one).close_to(br("0.000626767038587"), 12));
  const BigReal r6 = peaks::stokes_ratio(qp, BigReal::of(1000000L));
  REQUIRE((r6 - one).close_to(br("6.25175872873e-5"), 12));
  REQUIRE((r6 - one).abs() < BigReal::of(Rational(1, 50))); // within 2 percent

  // kappa = 1 reduces to e^x over its own asymptotic normalization: exact to
  // working precision.
  const PeakSeriesParams ex = exponential_series();
  const BigReal r1 = peaks::stokes_ratio(ex, BigReal::of(1000L));
  REQUIRE((r1 - one).abs() <= BigReal::pow_si(10, -40));

  // Non-unit scale parameters are outside the implemented normalization.
  const PeakSeriesParams halfstep =
      peaks::series_params({}, {}, {Rational(2)}, {Rational(1)});
  REQUIRE_THROWS_AS(peaks::stokes_ratio(halfstep, BigReal::of(1000L)), UnsupportedError);
  const PeakSeriesParams mixed =
      peaks::series_params({Rational(2)}, {Rational(1)}, {Rational(3)}, {Rational(2)});
  REQUIRE_THROWS_AS(peaks::stokes_ratio(mixed, BigReal::of(1000L)), UnsupportedError);
}

TEST_CASE("decay fit recovers synthetic exponents") {
  std::vector<BigReal> xs = {BigReal::of(100L), BigReal::of(1000L), BigReal::of(10000L)};
  std::vector<BigReal> rs;
  for (const auto& x : xs) {
    const BigReal expo = x.pow(BigReal::of(Rational(3, 10))) * Rational(1, 2);
    rs.push_back((-expo).exp());
  }
  const auto [amp, slope] = peaks::fit_decay(xs, rs);
  REQUIRE(amp.close_to(BigReal::of(Rational(1, 2)), 40));
  REQUIRE(slope.close_to(BigReal::of(Rational(3, 10)), 40));

  REQUIRE_THROWS_AS(peaks::fit_decay({xs[0]}, {rs[0]}), std::invalid_argument);
  REQUIRE_THROWS_AS(peaks::fit_decay(xs, {rs[0], rs[1]}), std::invalid_argument);
  REQUIRE_THROWS_AS(peaks::fit_decay({xs[0], xs[1]}, {rs[0], BigReal::of(2L)}), std::domain_error);
  REQUIRE_THROWS_AS(peaks::fit_decay({xs[0], xs[0]}, {rs[0], rs[0]}), std::domain_error);
}
