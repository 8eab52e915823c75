#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qh/config.hpp"
#include "qh/mzv.hpp"

using namespace qh;
using namespace qh::mzv;

namespace {
Rational evaluate_strict_combo(const std::map<Index, Rational>& combo, long d) {
  Rational acc(0);
  for (const auto& [idx, c] : combo) acc += c * strict_exact(idx, d);
  return acc;
}
} // namespace

TEST_CASE("edge conventions: empty index, zero cutoff, validation") {
  CHECK(strict_exact({}, 7) == Rational(1));
  CHECK(weak_exact({}, 7) == Rational(1));
  CHECK(strict_exact({2, 1}, 0) == Rational(0));
  CHECK(weak_exact({1, 1, 1}, 0) == Rational(0));
  // strict sums need at least `depth` distinct indices
  CHECK(strict_exact({1, 1, 1}, 2) == Rational(0));
  CHECK(strict_direct({1, 1, 1}, 2) == Rational(0));
  CHECK_THROWS_AS(strict_exact({0, 1}, 5), std::invalid_argument);
  CHECK_THROWS_AS(weak_exact({2, -1}, 5), std::invalid_argument);
  CHECK_THROWS_AS(strict_exact({2, 1}, config().exact_crossover + 1), std::domain_error);
}

TEST_CASE("strict partial sums match frozen exact values") {
  // Frozen with an independent Python fractions implementation.
  CHECK(strict_exact({2, 1}, 3) == Rational("5/12"));
  CHECK(strict_exact({2, 1}, 5) == Rational("59/96"));
  CHECK(strict_exact({2, 1}, 10) == Rational("2152309/2592000"));
  CHECK(strict_exact({3}, 5) == Rational("256103/216000"));
  CHECK(strict_exact({2, 2}, 5) == Rational("1529/2880"));
  CHECK(strict_exact({3, 1}, 7) == Rational("88391/362880"));
  CHECK(strict_exact({2, 2, 1}, 6) == Rational("7961/86400"));
  CHECK(strict_exact({1, 1}, 5) == Rational("15/8"));
  CHECK(strict_exact({2, 3}, 4) == Rational("1547/3456"));
  CHECK(strict_exact({2, 1}, 50) ==
        Rational("693774367570599922089171366651946011258379/"
                 "634590610419082934855905478805337344000000"));
}

TEST_CASE("weak partial sums match frozen exact values") {
  CHECK(weak_exact({1, 1}, 2) == Rational("7/4"));
  CHECK(weak_exact({1}, 3) == Rational("11/6"));
  CHECK(weak_exact({1, 1}, 3) == Rational("85/36"));
  CHECK(weak_exact({1, 1, 1}, 3) == Rational("575/216"));
  CHECK(weak_exact({2, 1}, 3) == Rational("341/216"));
  CHECK(weak_exact({2, 1}, 5) == Rational("388853/216000"));
  CHECK(weak_exact({1, 2, 1}, 4) == Rational("54763/20736"));
  CHECK(weak_exact({2, 1, 1}, 4) == Rational("38983/20736"));
  CHECK(weak_exact({1, 1, 1, 1}, 3) == Rational("3661/1296"));
  CHECK(weak_exact({2, 2, 1}, 5) == Rational("1320347957/777600000"));
  CHECK(weak_exact({1, 1, 2, 1}, 2) == Rational("59/32"));
  CHECK(weak_exact({1}, 6) == Rational("49/20"));
  CHECK(weak_exact({1, 1}, 6) == Rational("13489/3600"));
  CHECK(weak_exact({1, 1, 1}, 10) == Rational("21945415349/3200601600"));
}

TEST_CASE("incremental recursion agrees with brute-force nesting") {
  const Index cases[] = {{1}, {2}, {1, 1}, {2, 1}, {1, 2}, {3, 1}, {1, 1, 1}, {2, 1, 1}, {1, 2, 1}};
  for (const auto& idx : cases) {
    for (long d : {1L, 2L, 3L, 5L, 8L}) {
      CAPTURE(d);
      CHECK(strict_exact(idx, d) == strict_direct(idx, d));
      CHECK(weak_exact(idx, d) == weak_direct(idx, d));
    }
  }
}

TEST_CASE("weak sums expand into strict sums with unit coefficients") {
  auto e11 = expand_weak({1, 1});
  REQUIRE(e11.size() == 2);
  CHECK(e11.at({1, 1}) == Rational(1));
  CHECK(e11.at({2}) == Rational(1));
  auto e21 = expand_weak({2, 1});
  REQUIRE(e21.size() == 2);
  CHECK(e21.at({2, 1}) == Rational(1));
  CHECK(e21.at({3}) == Rational(1));
  auto e5 = expand_weak({5});
  REQUIRE(e5.size() == 1);
  CHECK(e5.at({5}) == Rational(1));

  // The expansion identity holds at every cutoff.
  const Index cases[] = {{1, 1},   {2, 1},       {1, 2},          {1, 1, 1},
                         {2, 2, 1}, {1, 2, 1, 1}, {2, 1, 1, 1, 1}, {1, 1, 1, 2, 1}};
  for (const auto& idx : cases) {
    auto combo = expand_weak(idx);
    CHECK(static_cast<long>(combo.size()) == (1L << (idx.size() - 1)));
    for (long d : {1L, 3L, 7L, 15L}) {
      CAPTURE(d);
      CHECK(weak_exact(idx, d) == evaluate_strict_combo(combo, d));
    }
  }
}

TEST_CASE("quasi-shuffle products of strict sums") {
  auto p = strict_product({2}, {1});
  REQUIRE(p.size() == 3);
  CHECK(p.at({2, 1}) == Rational(1));
  CHECK(p.at({1, 2}) == Rational(1));
  CHECK(p.at({3}) == Rational(1));
  auto q = strict_product({1}, {1});
  REQUIRE(q.size() == 2);
  CHECK(q.at({1, 1}) == Rational(2));
  CHECK(q.at({2}) == Rational(1));

  // Product identity at finite cutoffs, all index pairs of weight <= 5.
  const std::pair<Index, Index> pairs[] = {
      {{2}, {1}}, {{1}, {1}}, {{2}, {3}}, {{2, 1}, {1}}, {{2}, {2, 1}}, {{1, 1}, {2, 1}}, {{3, 1}, {1}}};
  for (const auto& [a, b] : pairs) {
    auto combo = strict_product(a, b);
    for (long d : {1L, 2L, 5L, 11L, 15L}) {
      CAPTURE(d);
      CHECK(strict_exact(a, d) * strict_exact(b, d) == evaluate_strict_combo(combo, d));
    }
  }
}

TEST_CASE("floating sweep matches exact values at checkpoints") {
  SweepRequest req;
  req.strict = {{2, 1}, {3}, {2, 2, 1}};
  req.weak = {{1, 1}, {2, 1}, {1, 2, 1}};
  req.checkpoints = {10, 50, 200};
  auto res = sweep(req);
  for (long d : req.checkpoints) {
    for (const auto& idx : req.strict) {
      BigReal exact = BigReal::of(strict_exact(idx, d));
      CHECK(res.strict.at(d).at(idx).close_to(exact, 44));
    }
    for (const auto& idx : req.weak) {
      BigReal exact = BigReal::of(weak_exact(idx, d));
      CHECK(res.weak.at(d).at(idx).close_to(exact, 44));
    }
  }
  CHECK(strict_big({2, 1}, 50).close_to(BigReal::of(strict_exact({2, 1}, 50)), 44));
  CHECK(weak_big({1, 1}, 50).close_to(BigReal::of(weak_exact({1, 1}, 50)), 44));
}

TEST_CASE("series zeta agrees with the library reference and pi^2/6") {
  for (long s = 2; s <= 6; ++s) {
    CAPTURE(s);
    CHECK(zeta_em(s).close_to(BigReal::zeta_ref(static_cast<unsigned long>(s)), 48));
  }
  BigReal pi = BigReal::pi();
  CHECK(zeta_em(2).close_to(pi * pi / 6, 48));
  // Frozen mpmath digits.
  CHECK(zeta_em(3, bits_for_digits(60))
            .close_to(BigReal::parse("1.202056903159594285399738161511449990764986292340498882"), 53));
  CHECK(zeta_em(5, bits_for_digits(60))
            .close_to(BigReal::parse("1.036927755143369926331365486457034168057080919501912812"), 53));
  CHECK_THROWS_AS(zeta_em(1), std::domain_error);
}

TEST_CASE("limit brackets") {
  CHECK_THROWS_AS(limit_value({1, 1}), std::domain_error);
  auto single = limit_value({2});
  CHECK(single.value.close_to(BigReal::zeta_ref(2), 47));

  // limit of strict(2,1) equals zeta(3); the bracket must contain it.
  auto deep = limit_value({2, 1}, 20000);
  BigReal z3 = BigReal::zeta_ref(3);
  CHECK(deep.value <= z3);
  CHECK(z3 <= deep.value + deep.tail_bound);
  CHECK(deep.tail_bound.to_double() < 2e-2);
}

TEST_CASE("classical limit identities hold within stated tail rates") {
  // At cutoff d the partial sums of both sides differ by O(polylog(d)/d).
  const long d = 500;
  SweepRequest req;
  req.strict = {{2, 1}, {3}, {2, 2, 1}, {3, 2}, {2, 3}, {4, 1}, {5}};
  req.checkpoints = {d};
  auto res = sweep(req);
  auto val = [&](const Index& idx) { return res.strict.at(d).at(idx).to_double(); };
  double lnd = std::log(static_cast<double>(d));
  CHECK(std::abs(val({2, 1}) - val({3})) <= 10 * lnd * lnd / d);
  CHECK(std::abs(val({2, 2, 1}) - val({3, 2})) <= 10 * lnd * lnd / d);
  CHECK(std::abs(val({2, 3}) + val({3, 2}) + val({4, 1}) - val({5})) <= 10 * lnd / d);
}
