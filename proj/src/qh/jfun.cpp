#include "qh/jfun.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>

namespace qh::jfun {

namespace {

// ---------------------------------------------------------------------------
// Ring data of the model family (pair ring Q ⊕ Q·chi, chi^2 = 0).
//
// Basis slots are (k, delta) = alpha^k Vol^delta, k in 0..3, delta in 0..1,
// with half-degree ("weight") w = k + 3*delta in 0..6.
// ---------------------------------------------------------------------------

struct Slot {
  int k;
  int delta;
};

int weight(int k, int delta) { return k + 3 * delta; }

const std::vector<Slot>& slots_of_weight(int w) {
  static const std::vector<std::vector<Slot>> table = [] {
    std::vector<std::vector<Slot>> t(7);
    for (int delta = 0; delta <= 1; ++delta)
      for (int k = 0; k <= 3; ++k) t[weight(k, delta)].push_back({k, delta});
    return t;
  }();
  if (w < 0 || w > 6) {
    static const std::vector<Slot> empty;
    return empty;
  }
  return table[static_cast<std::size_t>(w)];
}

// dual(alpha^k Vol^delta) expanded in the basis.  The pairing matrix of the
// family is ∫ x·y with the chi-bearing rollover, giving
//   dual(alpha^k Vol)   = alpha^{3-k} / 8
//   dual(alpha^k), k>=1 = alpha^{3-k} Vol / 8
//   dual(1)             = alpha^3 Vol / 8
//   dual(Vol)           = alpha^3 / 8 + chi·Vol
std::vector<std::pair<Slot, GradedValue>> dual_of(const Slot& s) {
  Rational eighth(1, 8);
  if (s.delta == 1) return {{Slot{3 - s.k, 0}, GradedValue{eighth, Rational(0)}}};
  if (s.k >= 1) return {{Slot{3 - s.k, 1}, GradedValue{eighth, Rational(0)}}};
  return {{Slot{3, 1}, GradedValue{eighth, Rational(0)}}}; // dual(1)
}

std::vector<std::pair<Slot, GradedValue>> dual_of_full(const Slot& s) {
  if (s.k == 0 && s.delta == 1) {
    // dual(Vol) = alpha^3/8 + chi·Vol
    return {{Slot{3, 0}, GradedValue{Rational(1, 8), Rational(0)}},
            {Slot{0, 1}, GradedValue{Rational(0), Rational(1)}}};
  }
  return dual_of(s);
}

// ∫ alpha^{k1+k2} Vol^{delta1+delta2} in the family ring:
//   Vol^2 = 0;  alpha^s = -8 chi alpha^{s-3} Vol for 4 <= s <= 6, 0 beyond;
//   ∫ alpha^3 Vol = 8  (hence ∫ alpha^6 = -64 chi).
GradedValue mul_integral(int k1, int d1, int k2, int d2) {
  int delta = d1 + d2;
  if (delta >= 2) return GradedValue{};
  int s = k1 + k2;
  if (s <= 3) {
    if (s == 3 && delta == 1) return GradedValue{Rational(8), Rational(0)};
    return GradedValue{};
  }
  if (s > 6) return GradedValue{};
  // rollover: -8 chi alpha^{s-3} Vol; dies if a Vol factor is already present
  if (delta == 1) return GradedValue{};
  if (s - 3 == 3) return GradedValue{Rational(0), Rational(-64)};
  return GradedValue{};
}

// Degree-1 three-point value ⟨eta, q, alpha⟩₁ = 2·⟨eta, q⟩₁ — nonzero (= 32)
// exactly when {eta, q} is one of the seed pairs {alpha, alpha^3 Vol} or
// {alpha Vol, alpha^3}.
bool is_seed_pair(int k1, int d1, int k2, int d2) {
  auto match = [&](int ka, int da, int kb, int db) {
    return (k1 == ka && d1 == da && k2 == kb && d2 == db) ||
           (k1 == kb && d1 == db && k2 == ka && d2 == da);
  };
  return match(1, 0, 3, 1) || match(1, 1, 3, 0);
}

Rational t1_value(int kn, int dn, int kq, int dq) {
  return is_seed_pair(kn, dn, kq, dq) ? Rational(32) : Rational(0);
}

// ---------------------------------------------------------------------------
// Memo tables.  Every stored entry carries the rule that produced it, so a
// derivation chain can be reconstructed for debugging.  A sentinel state
// guards against ungrounded recursion (which would signal a table bug).
// ---------------------------------------------------------------------------

struct Entry {
  GradedValue value;
  const char* rule = "";
  bool in_progress = false;
};

using Key1 = std::tuple<long, int, int>;              // d, k, delta
using Key2 = std::tuple<long, int, int, int, int>;    // d, k1, delta1, k2, delta2
using KeyY1 = std::tuple<long, int, int>;             // d, k, m
using KeyY2 = std::tuple<long, int, int, int, int>;   // d, k, j, delta2, m

std::map<Key1, Entry> g_k1;
std::map<Key2, Entry> g_k2;
std::map<KeyY1, Entry> g_y1;
std::map<KeyY2, Entry> g_y2;
std::mutex g_engine_mutex; // public entry points serialize on this

[[noreturn]] void ungrounded(const std::string& what) {
  throw std::logic_error("descendant table: recursion cannot ground key (" + what + ")");
}

template <class Map, class Key>
Entry* begin_eval(Map& memo, const Key& key, const std::string& label) {
  auto [it, inserted] = memo.try_emplace(key);
  if (!inserted) {
    if (it->second.in_progress) ungrounded(label);
    return nullptr; // already computed; caller reads memo
  }
  it->second.in_progress = true;
  return &it->second;
}

GradedValue k1_main(long d, int k, int delta);
GradedValue k2_main(long d, int k1, int delta1, int k2, int delta2);

// One-point ⟨ψ^{2d+4-k-3δ} alpha^k Vol^δ⟩_d via the divisor axiom:
//   ⟨ψ^a p, alpha⟩_d = 2d·⟨ψ^a p⟩_d + ⟨ψ^{a-1} (alpha·p)⟩_d
// where alpha·p rolls over alpha^4 = -8 chi alpha Vol (and alpha^4 Vol = 0).
GradedValue k1_main(long d, int k, int delta) {
  if (d < 1) return GradedValue{};
  long a = 2 * d + 4 - (k + 3 * delta);
  if (a < 0) return GradedValue{};
  if (a == 0) {
    // Only seed: ⟨alpha^3 Vol⟩₁ = 8.
    if (d == 1 && k == 3 && delta == 1) return GradedValue{Rational(8), Rational(0)};
    return GradedValue{};
  }
  Key1 key{d, k, delta};
  Entry* e = begin_eval(g_k1, key, "one-point d=" + std::to_string(d));
  if (!e) return g_k1[key].value;

  GradedValue rhs = k2_main(d, k, delta, 1, 0);
  if (k < 3) {
    rhs -= k1_main(d, k + 1, delta);
  } else if (delta == 0) {
    rhs -= GradedValue{Rational(0), Rational(-8)} * k1_main(d, 1, 1);
  } // (3,1): alpha^4 Vol = 0, no correction
  GradedValue v = rhs / (2 * d);
  e->value = v;
  e->rule = "divisor";
  e->in_progress = false;
  return v;
}

// Two-point ⟨ψ^{a} p, q⟩_d with ψ on the first insertion,
// a = 2d+5-w(p)-w(q).  Reduction: the divisor axiom applied to
// ⟨ψ^a p, q, alpha⟩_d combined with the TRR
//   ⟨ψ^a p, q, alpha⟩_d = Σ ⟨ψ^{a-1} p, η_m⟩_{d-d₂} g^{mn} ⟨η_n, q, alpha⟩_{d₂}
// in which only d₂ = 0 (classical triple product) and d₂ = 1 (seed pairs)
// contribute.
GradedValue k2_main(long d, int k1, int delta1, int k2, int delta2) {
  if (d < 1) return GradedValue{}; // degree-0 two-point seeds are 0
  int w1 = weight(k1, delta1), w2 = weight(k2, delta2);
  long a = 2 * d + 5 - w1 - w2;
  if (a < 0) return GradedValue{};
  if (k2 == 0 && delta2 == 0) {
    // Unit insertion: string equation ⟨ψ^a p, 1⟩ = ⟨ψ^{a-1} p⟩ (0 if a = 0).
    return a >= 1 ? k1_main(d, k1, delta1) : GradedValue{};
  }
  if (a == 0) {
    if (d == 1 && is_seed_pair(k1, delta1, k2, delta2))
      return GradedValue{Rational(16), Rational(0)};
    return GradedValue{}; // degree >= 2 seeds vanish
  }
  Key2 key{d, k1, delta1, k2, delta2};
  Entry* e = begin_eval(g_k2, key, "two-point d=" + std::to_string(d));
  if (!e) return g_k2[key].value;

  GradedValue trr{};
  // d₂ = 0 branch: η_m of weight w2+1, classical ⟨η_n, q, alpha⟩₀ = ∫ η_n·alpha·q.
  for (const Slot& m : slots_of_weight(w2 + 1)) {
    GradedValue first = k2_main(d, k1, delta1, m.k, m.delta);
    if (first.is_zero()) continue;
    for (const auto& [n, coeff] : dual_of_full(m)) {
      GradedValue t0 = mul_integral(n.k, n.delta, k2 + 1, delta2);
      trr += first * coeff * t0;
    }
  }
  // d₂ = 1 branch: η_m of weight w2-1, quantum ⟨η_n, q, alpha⟩₁ = 32 on seed pairs.
  for (const Slot& m : slots_of_weight(w2 - 1)) {
    GradedValue first = k2_main(d - 1, k1, delta1, m.k, m.delta);
    if (first.is_zero()) continue;
    for (const auto& [n, coeff] : dual_of_full(m)) {
      Rational t1 = t1_value(n.k, n.delta, k2, delta2);
      if (t1.is_zero()) continue;
      trr += first * coeff * t1;
    }
  }
  // Divisor correction ⟨ψ^{a-1}(alpha·p), q⟩ with the rollover rule.
  GradedValue corr{};
  if (k1 < 3) {
    corr = k2_main(d, k1 + 1, delta1, k2, delta2);
  } else if (delta1 == 0) {
    corr = GradedValue{Rational(0), Rational(-8)} * k2_main(d, 1, 1, k2, delta2);
  }
  GradedValue v = (trr - corr) / (2 * d);
  e->value = v;
  e->rule = "trr+divisor";
  e->in_progress = false;
  return v;
}

// ---------------------------------------------------------------------------
// Mixed y-sector: first insertion alpha^k y with y of real degree m.
// Same recursion shape; the y-sector ring facts are
//   Vol·y = 0 (so the alpha^4 rollover kills alpha^4 y),
//   ∫ (main)·(single y) = 0,
//   no degree-1 seed pairs mix y with the main sector.
// Consequently every mixed value computes to 0; the code runs the literal
// recursion rather than asserting the conclusion.
// ---------------------------------------------------------------------------

GradedValue k1_y(long d, int k, int m);

GradedValue k2_y(long d, int k, int kq, int dq, int m) {
  if (d < 1) return GradedValue{};
  // half-degree of alpha^k y is k + m/2: fractional ψ-power → 0
  long twice_a = 2 * (2 * d + 5 - k - (kq + 3 * dq)) - m;
  if (twice_a < 0 || twice_a % 2 != 0) return GradedValue{};
  long a = twice_a / 2;
  if (kq == 0 && dq == 0) return a >= 1 ? k1_y(d, k, m) : GradedValue{};
  if (a == 0) return GradedValue{}; // no mixed seeds at any degree
  KeyY2 key{d, k, kq, dq, m};
  Entry* e = begin_eval(g_y2, key, "mixed two-point d=" + std::to_string(d));
  if (!e) return g_y2[key].value;

  int w2 = weight(kq, dq);
  GradedValue trr{};
  // Main-sector η only: a y-flavored η leaves a single y in the second factor,
  // whose classical integral and degree-1 value both vanish.
  for (const Slot& mm : slots_of_weight(w2 + 1)) {
    GradedValue first = k2_y(d, k, mm.k, mm.delta, m);
    if (first.is_zero()) continue;
    for (const auto& [n, coeff] : dual_of_full(mm))
      trr += first * coeff * mul_integral(n.k, n.delta, kq + 1, dq);
  }
  for (const Slot& mm : slots_of_weight(w2 - 1)) {
    GradedValue first = k2_y(d - 1, k, mm.k, mm.delta, m);
    if (first.is_zero()) continue;
    for (const auto& [n, coeff] : dual_of_full(mm)) {
      Rational t1 = t1_value(n.k, n.delta, kq, dq);
      if (!t1.is_zero()) trr += first * coeff * t1;
    }
  }
  GradedValue corr{};
  if (k < 3) corr = k2_y(d, k + 1, kq, dq, m); // alpha^4 y = 0: no k=3 term
  GradedValue v = (trr - corr) / (2 * d);
  e->value = v;
  e->rule = "trr+divisor(y)";
  e->in_progress = false;
  return v;
}

GradedValue k1_y(long d, int k, int m) {
  if (d < 1) return GradedValue{};
  long twice_a = 2 * (2 * d + 4 - k) - m;
  if (twice_a < 0 || twice_a % 2 != 0) return GradedValue{};
  long a = twice_a / 2;
  if (a == 0) return GradedValue{}; // no one-point y seeds
  KeyY1 key{d, k, m};
  Entry* e = begin_eval(g_y1, key, "mixed one-point d=" + std::to_string(d));
  if (!e) return g_y1[key].value;
  GradedValue rhs = k2_y(d, k, 1, 0, m);
  if (k < 3) rhs -= k1_y(d, k + 1, m);
  GradedValue v = rhs / (2 * d);
  e->value = v;
  e->rule = "divisor(y)";
  e->in_progress = false;
  return v;
}

void validate_key(const DescendantKey& key) {
  if (key.d < 0) throw std::invalid_argument("descendant key: d must be >= 0");
  if (key.k < 0 || key.k > 3) throw std::invalid_argument("descendant key: k must be in 0..3");
  if (key.delta != 0 && key.delta != 1)
    throw std::invalid_argument("descendant key: delta must be 0 or 1");
  if (key.has_second) {
    if (key.j < 0 || key.j > 3) throw std::invalid_argument("descendant key: j must be in 0..3");
    if (key.delta2 != 0 && key.delta2 != 1)
      throw std::invalid_argument("descendant key: delta2 must be 0 or 1");
  }
  if (key.y && key.y_degree < 1)
    throw std::invalid_argument("descendant key: y_degree must be >= 1");
}

// ---------------------------------------------------------------------------
// Closed forms: the eight printed families, value = (listed formula)/d!^2 with
// the delta = 0 families multiplying the chi symbol.
// ---------------------------------------------------------------------------

Rational S(const mzv::Index& idx, long d) { return mzv::weak_exact(idx, d); }

GradedValue closed_family(long d, int k, int delta) {
  if (d < 1) return GradedValue{};
  Rational inv_fact_sq = Rational(1) / factorial_sq(d);
  Rational v;
  bool chi_part = (delta == 0);
  if (delta == 1) {
    switch (k) {
      case 3: v = Rational(8); break;
      case 2: v = Rational(-8) * S({1}, d); break;
      case 1: v = Rational(8) * S({1, 1}, d); break;
      default: v = Rational(-8) * S({1, 1, 1}, d); break;
    }
  } else {
    switch (k) {
      case 3:
        v = Rational(-8) * S({2, 1}, d) + Rational(64) * S({1, 1, 1}, d);
        break;
      case 2:
        v = Rational(8) * S({1, 2, 1}, d) + Rational(16) * S({2, 1, 1}, d) -
            Rational(64) * S({1, 1, 1, 1}, d);
        break;
      case 1:
        v = Rational(4) * S({2, 2, 1}, d) - Rational(24) * S({2, 1, 1, 1}, d) -
            Rational(16) * S({1, 2, 1, 1}, d) - Rational(8) * S({1, 1, 2, 1}, d) +
            Rational(64) * S({1, 1, 1, 1, 1}, d);
        break;
      default:
        v = Rational(-8) * S({2, 2, 1, 1}, d) - Rational(4) * S({2, 1, 2, 1}, d) -
            Rational(4) * S({1, 2, 2, 1}, d) + Rational(8) * S({1, 1, 1, 2, 1}, d) +
            Rational(16) * S({1, 1, 2, 1, 1}, d) + Rational(24) * S({1, 2, 1, 1, 1}, d) +
            Rational(32) * S({2, 1, 1, 1, 1}, d) - Rational(64) * S({1, 1, 1, 1, 1, 1}, d);
        break;
    }
  }
  v *= inv_fact_sq;
  return chi_part ? GradedValue{Rational(0), v} : GradedValue{v, Rational(0)};
}

} // namespace

Rational factorial_sq(long d) {
  Rational f = factorial(static_cast<unsigned long>(d));
  return f * f;
}

GradedValue desc_invariant(const DescendantKey& key) {
  validate_key(key);
  std::lock_guard<std::mutex> lock(g_engine_mutex);
  if (key.y) {
    if (key.has_second) return k2_y(key.d, key.k, key.j, key.delta2, key.y_degree);
    return k1_y(key.d, key.k, key.y_degree);
  }
  if (key.has_second) return k2_main(key.d, key.k, key.delta, key.j, key.delta2);
  return k1_main(key.d, key.k, key.delta);
}

GradedValue desc_closed_form(const DescendantKey& key) {
  validate_key(key);
  if (key.y || key.has_second)
    throw std::invalid_argument("closed form: key outside the printed one-point families");
  return closed_family(key.d, key.k, key.delta);
}

TwistorJ twistor_j_raw(long d) {
  if (d < 0) throw std::invalid_argument("J-coefficient: d must be >= 0");
  TwistorJ out;
  if (d == 0) {
    out.alpha[0] = Rational(1);
    return out;
  }
  std::lock_guard<std::mutex> lock(g_engine_mutex);
  // J_d = Σ_s ⟨ψ^* η_s⟩_d · dual(η_s), collected per basis slot.
  std::array<std::array<GradedValue, 4>, 2> coeff; // [delta][k]
  for (int delta = 0; delta <= 1; ++delta)
    for (int k = 0; k <= 3; ++k) {
      GradedValue v = k1_main(d, k, delta);
      if (v.is_zero()) continue;
      for (const auto& [n, c] : dual_of_full(Slot{k, delta}))
        coeff[static_cast<std::size_t>(n.delta)][static_cast<std::size_t>(n.k)] += v * c;
    }
  for (int k = 0; k <= 3; ++k) {
    const GradedValue& plain = coeff[0][static_cast<std::size_t>(k)];
    const GradedValue& vol = coeff[1][static_cast<std::size_t>(k)];
    if (!plain.chi.is_zero() || !vol.main.is_zero())
      throw std::logic_error("J assembly: unexpected grading mix");
    out.alpha[static_cast<std::size_t>(k)] = plain.main;
    out.chi[static_cast<std::size_t>(k)] = vol.chi;
  }
  return out;
}

TwistorJ twistor_j_normalized(long d) {
  TwistorJ raw = twistor_j_raw(d);
  Rational scale = factorial_sq(d);
  TwistorJ out;
  for (std::size_t i = 0; i < 4; ++i) {
    out.alpha[i] = raw.alpha[i] * scale;
    out.chi[i] = raw.chi[i] * scale;
  }
  return out;
}

std::vector<std::pair<Rational, mzv::Index>> sum_formula_terms(int row) {
  if (row < 0 || row > 7) throw std::invalid_argument("sum-formula row must be in 0..7");
  using P = std::pair<Rational, mzv::Index>;
  switch (row) {
    case 0: return {P{Rational(1), {}}};
    case 1: return {P{Rational(-1), {1}}};
    case 2: return {P{Rational(1), {1, 1}}};
    case 3: return {P{Rational(-1), {1, 1, 1}}};
    case 4: return {P{Rational(-1), {2, 1}}};
    case 5:
      return {P{Rational(-8), {1, 1, 1, 1}}, P{Rational(1), {1, 2, 1}},
              P{Rational(2), {2, 1, 1}}};
    case 6:
      return {P{Rational(-3), {2, 1, 1, 1}}, P{Rational(-2), {1, 2, 1, 1}},
              P{Rational(-1), {1, 1, 2, 1}}, P{Rational(1, 2), {2, 2, 1}},
              P{Rational(8), {1, 1, 1, 1, 1}}};
    default:
      return {P{Rational(-1), {2, 2, 1, 1}}, P{Rational(-1, 2), {2, 1, 2, 1}},
              P{Rational(-1, 2), {1, 2, 2, 1}}, P{Rational(1), {1, 1, 1, 2, 1}},
              P{Rational(2), {1, 1, 2, 1, 1}}, P{Rational(3), {1, 2, 1, 1, 1}},
              P{Rational(4), {2, 1, 1, 1, 1}}, P{Rational(-8), {1, 1, 1, 1, 1, 1}}};
  }
}

TwistorJ twistor_j_sum_formula(long d) {
  if (d < 0) throw std::invalid_argument("J-coefficient: d must be >= 0");
  TwistorJ out;
  if (d == 0) {
    out.alpha[0] = Rational(1);
    return out;
  }
  for (int row = 0; row < 8; ++row) {
    Rational acc;
    for (const auto& [c, idx] : sum_formula_terms(row)) acc += c * mzv::weak_exact(idx, d);
    if (row < 4)
      out.alpha[static_cast<std::size_t>(row)] = acc;
    else
      out.chi[static_cast<std::size_t>(row - 4)] = acc;
  }
  return out;
}

std::vector<Rational> cpn_j_raw(int N, long n) {
  if (N < 1) throw std::invalid_argument("projective space dimension must be >= 1");
  if (n < 0) throw std::invalid_argument("J-coefficient: n must be >= 0");
  std::size_t len = static_cast<std::size_t>(N) + 1;
  std::vector<Rational> acc(len);
  acc[0] = Rational(1);
  for (long k = 1; k <= n; ++k) {
    // inv = (h+k)^{-1} mod h^{N+1} = (1/k) Σ_j (-h/k)^j
    std::vector<Rational> inv(len);
    Rational term(1, k);
    for (std::size_t j = 0; j < len; ++j) {
      inv[j] = term;
      term *= Rational(-1, k);
    }
    for (int rep = 0; rep < N + 1; ++rep) {
      std::vector<Rational> next(len);
      for (std::size_t i = 0; i < len; ++i) {
        if (acc[i].is_zero()) continue;
        for (std::size_t j = 0; i + j < len; ++j) next[i + j] += acc[i] * inv[j];
      }
      acc = std::move(next);
    }
  }
  return acc;
}

std::vector<Rational> cpn_j_normalized(int N, long n) {
  std::vector<Rational> raw = cpn_j_raw(N, n);
  Rational c0 = raw[0];
  if (c0.is_zero()) throw std::logic_error("J-coefficient: vanishing pt-pairing");
  for (Rational& r : raw) r /= c0;
  return raw;
}

Rational quantum_period_cpn(int N, long n) {
  if (N < 1) throw std::invalid_argument("projective space dimension must be >= 1");
  if (n < 0) throw std::invalid_argument("quantum period: n must be >= 0");
  Rational f = factorial(static_cast<unsigned long>(n));
  return Rational(1) / f.pow(N + 1);
}

Rational quantum_period_twistor(long n) {
  if (n < 0) throw std::invalid_argument("quantum period: n must be >= 0");
  return Rational(1) / factorial_sq(n);
}

std::size_t engine_reset() {
  std::lock_guard<std::mutex> lock(g_engine_mutex);
  std::size_t n = g_k1.size() + g_k2.size() + g_y1.size() + g_y2.size();
  g_k1.clear();
  g_k2.clear();
  g_y1.clear();
  g_y2.clear();
  return n;
}

} // namespace qh::jfun
