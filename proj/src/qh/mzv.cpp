#include "qh/mzv.hpp"

#include <algorithm>
#include <mutex>
#include <set>

#include "qh/bernoulli.hpp"
#include "qh/config.hpp"
#include "qh/errors.hpp"

namespace qh {
namespace mzv {

void validate_index(const Index& idx) {
  for (int s : idx)
    if (s < 1) throw std::invalid_argument("index entries must be integers >= 1");
}

namespace {

Index tail_of(const Index& idx) { return Index(idx.begin() + 1, idx.end()); }

// d^(-s) as an exact rational (d >= 1).
Rational inv_power(long d, int s) { return Rational(d).pow(-static_cast<long>(s)); }

// ---- exact caches ----------------------------------------------------------
// For each index we keep the vector of partial values at cutoffs 0..N and
// extend it incrementally.  std::map nodes are stable under insertion, so
// references held across the recursive extension stay valid.

std::map<Index, std::vector<Rational>> g_strict_cache;
std::map<Index, std::vector<Rational>> g_weak_cache;
std::mutex g_exact_mu;

// Extends the cached vector so that values for all cutoffs <= d exist, and
// returns it.  idx must be nonempty; the empty index is identically 1 and is
// special-cased by callers.
const std::vector<Rational>& strict_entries(const Index& idx, long d) {
  auto& v = g_strict_cache[idx];
  if (static_cast<long>(v.size()) > d) return v;
  const Index tail = tail_of(idx);
  if (!tail.empty() && d >= 1) strict_entries(tail, d - 1);
  if (v.empty()) v.push_back(Rational(0)); // cutoff 0
  const int s1 = idx[0];
  for (long n = static_cast<long>(v.size()); n <= d; ++n) {
    // strict(n) = strict(n-1) + n^(-s1) * strict_tail(n-1)
    Rational t = tail.empty() ? Rational(1) : g_strict_cache[tail][static_cast<std::size_t>(n - 1)];
    v.push_back(v.back() + inv_power(n, s1) * t);
  }
  return v;
}

const std::vector<Rational>& weak_entries(const Index& idx, long d) {
  auto& v = g_weak_cache[idx];
  if (static_cast<long>(v.size()) > d) return v;
  const Index tail = tail_of(idx);
  if (!tail.empty()) weak_entries(tail, d); // same cutoff: weak allows ties
  if (v.empty()) v.push_back(Rational(0));
  const int s1 = idx[0];
  for (long n = static_cast<long>(v.size()); n <= d; ++n) {
    // weak(n) = weak(n-1) + n^(-s1) * weak_tail(n)
    Rational t = tail.empty() ? Rational(1) : g_weak_cache[tail][static_cast<std::size_t>(n)];
    v.push_back(v.back() + inv_power(n, s1) * t);
  }
  return v;
}

void check_exact_cutoff(long d) {
  if (d < 0) throw std::invalid_argument("cutoff must be >= 0");
  if (d > config().exact_crossover)
    throw std::domain_error("exact evaluation requested beyond the configured crossover cutoff (" +
                            std::to_string(config().exact_crossover) + "); use the floating sweep");
}

} // namespace

Rational strict_exact(const Index& idx, long d) {
  validate_index(idx);
  check_exact_cutoff(d);
  if (idx.empty()) return Rational(1);
  if (d == 0) return Rational(0);
  std::lock_guard<std::mutex> lock(g_exact_mu);
  return strict_entries(idx, d)[static_cast<std::size_t>(d)];
}

Rational weak_exact(const Index& idx, long d) {
  validate_index(idx);
  check_exact_cutoff(d);
  if (idx.empty()) return Rational(1);
  if (d == 0) return Rational(0);
  std::lock_guard<std::mutex> lock(g_exact_mu);
  return weak_entries(idx, d)[static_cast<std::size_t>(d)];
}

Rational strict_direct(const Index& idx, long d) {
  validate_index(idx);
  if (idx.empty()) return Rational(1);
  Rational acc(0);
  const Index tail = tail_of(idx);
  for (long n = static_cast<long>(idx.size()); n <= d; ++n)
    acc += inv_power(n, idx[0]) * strict_direct(tail, n - 1);
  return acc;
}

Rational weak_direct(const Index& idx, long d) {
  validate_index(idx);
  if (idx.empty()) return Rational(1);
  Rational acc(0);
  const Index tail = tail_of(idx);
  for (long n = 1; n <= d; ++n) acc += inv_power(n, idx[0]) * weak_direct(tail, n);
  return acc;
}

// ---- floating sweep --------------------------------------------------------

SweepResult sweep(const SweepRequest& req, long prec_bits) {
  const long bits = prec_bits > 0 ? prec_bits : BigReal::default_bits();
  for (const auto& idx : req.strict) validate_index(idx);
  for (const auto& idx : req.weak) validate_index(idx);
  if (req.checkpoints.empty()) throw std::invalid_argument("sweep: no checkpoints");
  for (long c : req.checkpoints)
    if (c < 1) throw std::invalid_argument("sweep: checkpoints must be >= 1");

  // Close both families under taking suffixes (the tails feed the update).
  auto closure = [](const std::vector<Index>& in) {
    std::set<Index> s;
    for (const auto& idx : in)
      for (std::size_t k = 0; k <= idx.size(); ++k) s.insert(Index(idx.begin() + k, idx.end()));
    s.erase(Index{});
    return s;
  };
  std::set<Index> strict_set = closure(req.strict), weak_set = closure(req.weak);

  // Update order within one cutoff step: strict sums read their tail at the
  // previous cutoff, so deeper indices must be updated first; weak sums read
  // their tail at the current cutoff, so shallower indices go first.
  auto by_depth = [](const std::set<Index>& s, bool deep_first) {
    std::vector<Index> v(s.begin(), s.end());
    std::stable_sort(v.begin(), v.end(), [deep_first](const Index& a, const Index& b) {
      return deep_first ? a.size() > b.size() : a.size() < b.size();
    });
    return v;
  };
  std::vector<Index> strict_order = by_depth(strict_set, true);
  std::vector<Index> weak_order = by_depth(weak_set, false);

  std::map<Index, BigReal> strict_state, weak_state;
  for (const auto& idx : strict_order) strict_state.emplace(idx, BigReal(bits));
  for (const auto& idx : weak_order) weak_state.emplace(idx, BigReal(bits));

  int max_exp = 1;
  for (const auto& idx : strict_order) max_exp = std::max(max_exp, idx[0]);
  for (const auto& idx : weak_order) max_exp = std::max(max_exp, idx[0]);

  std::vector<long> cps = req.checkpoints;
  std::sort(cps.begin(), cps.end());
  cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
  const long d_max = cps.back();

  SweepResult out;
  const BigReal one = BigReal::of(1, bits);
  std::vector<BigReal> pw(static_cast<std::size_t>(max_exp) + 1, BigReal(bits));
  std::size_t next_cp = 0;
  for (long n = 1; n <= d_max; ++n) {
    // pw[s] = n^(-s)
    pw[0] = one;
    BigReal inv = one / n;
    for (int s = 1; s <= max_exp; ++s) pw[static_cast<std::size_t>(s)] = pw[static_cast<std::size_t>(s - 1)] * inv;

    for (const auto& idx : strict_order) {
      const Index tail = tail_of(idx);
      const BigReal& t = tail.empty() ? one : strict_state.at(tail); // still at n-1
      strict_state.at(idx) += pw[static_cast<std::size_t>(idx[0])] * t;
    }
    for (const auto& idx : weak_order) {
      const Index tail = tail_of(idx);
      const BigReal& t = tail.empty() ? one : weak_state.at(tail); // already at n
      weak_state.at(idx) += pw[static_cast<std::size_t>(idx[0])] * t;
    }

    while (next_cp < cps.size() && cps[next_cp] == n) {
      for (const auto& idx : req.strict) out.strict[n].emplace(idx, idx.empty() ? one : strict_state.at(idx));
      for (const auto& idx : req.weak) out.weak[n].emplace(idx, idx.empty() ? one : weak_state.at(idx));
      ++next_cp;
    }
  }
  return out;
}

BigReal strict_big(const Index& idx, long d, long prec_bits) {
  validate_index(idx);
  if (d < 0) throw std::invalid_argument("cutoff must be >= 0");
  const long bits = prec_bits > 0 ? prec_bits : BigReal::default_bits();
  if (idx.empty()) return BigReal::of(1, bits);
  if (d == 0) return BigReal(bits);
  SweepRequest req;
  req.strict.push_back(idx);
  req.checkpoints.push_back(d);
  return sweep(req, bits).strict.at(d).at(idx);
}

BigReal weak_big(const Index& idx, long d, long prec_bits) {
  validate_index(idx);
  if (d < 0) throw std::invalid_argument("cutoff must be >= 0");
  const long bits = prec_bits > 0 ? prec_bits : BigReal::default_bits();
  if (idx.empty()) return BigReal::of(1, bits);
  if (d == 0) return BigReal(bits);
  SweepRequest req;
  req.weak.push_back(idx);
  req.checkpoints.push_back(d);
  return sweep(req, bits).weak.at(d).at(idx);
}

// ---- quasi-shuffle algebra -------------------------------------------------

std::map<Index, Rational> expand_weak(const Index& idx) {
  validate_index(idx);
  std::map<Index, Rational> out;
  if (idx.empty()) {
    out[Index{}] = Rational(1);
    return out;
  }
  // Each way of merging consecutive entries into blocks contributes the
  // strict sum over the block totals, with coefficient 1: ties in the weak
  // sum are grouped by their equality pattern.
  const std::size_t cuts = idx.size() - 1;
  for (unsigned long mask = 0; mask < (1UL << cuts); ++mask) {
    Index merged;
    int acc = idx[0];
    for (std::size_t j = 0; j < cuts; ++j) {
      if (mask & (1UL << j)) {
        acc += idx[j + 1]; // entry j+1 merges into the current block
      } else {
        merged.push_back(acc);
        acc = idx[j + 1];
      }
    }
    merged.push_back(acc);
    out[merged] += Rational(1);
  }
  return out;
}

std::map<Index, Rational> strict_product(const Index& a, const Index& b) {
  validate_index(a);
  validate_index(b);
  std::map<Index, Rational> out;
  if (a.empty()) {
    out[b] += Rational(1);
    return out;
  }
  if (b.empty()) {
    out[a] += Rational(1);
    return out;
  }
  const Index ta = tail_of(a), tb = tail_of(b);
  auto prepend = [&out](int head, const std::map<Index, Rational>& terms) {
    for (const auto& [idx, c] : terms) {
      Index k;
      k.reserve(idx.size() + 1);
      k.push_back(head);
      k.insert(k.end(), idx.begin(), idx.end());
      out[k] += c;
    }
  };
  prepend(a[0], strict_product(ta, b));
  prepend(b[0], strict_product(a, tb));
  prepend(a[0] + b[0], strict_product(ta, tb));
  return out;
}

// ---- limits ----------------------------------------------------------------

BigReal zeta_em(long s, long prec_bits) {
  if (s < 2) throw std::domain_error("zeta_em: argument must be an integer >= 2");
  const long bits = prec_bits > 0 ? prec_bits : BigReal::default_bits();
  const long work = bits + 64;
  const int digits = static_cast<int>(bits / 3.32) + 2;

  long N = std::max<long>(30, digits);
  for (int attempt = 0; attempt < 6; ++attempt, N *= 2) {
    // Head sum_{n=1}^{N-1} n^(-s).
    BigReal head(work);
    for (long n = 1; n < N; ++n) head += BigReal::of(n, work).pow(-s);
    // Tail by Euler-Maclaurin from n = N:
    //   N^(1-s)/(s-1) + N^(-s)/2 + sum_j B_{2j}/(2j)! (s)_{2j-1} N^(-s-2j+1)
    BigReal bigN = BigReal::of(N, work);
    BigReal tail = bigN.pow(1 - s) / (s - 1) + bigN.pow(-s) / 2;
    BigReal target = BigReal::pow_si(10, -(digits + 10), work);
    Rational rising(s); // (s)_{2j-1} = s(s+1)...(s+2j-2), built incrementally
    BigReal prev_mag(work);
    bool ok = false;
    for (unsigned j = 1; j <= 400; ++j) {
      if (j > 1)
        rising *= Rational(s + 2 * static_cast<long>(j) - 3) * Rational(s + 2 * static_cast<long>(j) - 2);
      Rational coeff = bernoulli(2 * j) / factorial(2 * j) * rising;
      BigReal term = BigReal::of(coeff, work) * bigN.pow(-s - 2 * static_cast<long>(j) + 1);
      BigReal mag = term.abs();
      if (j > 1 && mag > prev_mag) break; // divergence onset: enlarge N
      tail += term;
      prev_mag = mag;
      if (mag < target) {
        ok = true;
        break;
      }
    }
    if (ok) {
      BigReal out(bits);
      mpfr_set(out.raw(), (head + tail).raw(), MPFR_RNDN);
      return out;
    }
  }
  throw UnsupportedError("zeta_em: Euler-Maclaurin did not converge at the requested precision");
}

LimitResult limit_value(const Index& idx, long d_max, long prec_bits) {
  validate_index(idx);
  const long bits = prec_bits > 0 ? prec_bits : BigReal::default_bits();
  if (idx.empty()) return {BigReal::of(1, bits), BigReal(bits)};
  if (idx[0] == 1)
    throw std::domain_error("limit_value: leading exponent 1 gives a divergent series");
  if (idx.size() == 1) {
    const int digits = static_cast<int>(bits / 3.32);
    return {zeta_em(idx[0], bits), BigReal::pow_si(10, -(digits - 2), bits)};
  }
  const long d = d_max > 0 ? d_max : 10000;
  BigReal value = strict_big(idx, d, bits);
  // 0 <= limit - value <= k (1 + ln d)^k / ((s1 - 1) d^(s1 - 1))
  const long k = static_cast<long>(idx.size());
  BigReal lnd = BigReal::of(d, bits).log();
  BigReal denom = BigReal::of(d, bits).pow(idx[0] - 1) * (static_cast<long>(idx[0]) - 1);
  BigReal bound = (lnd + 1).pow(k) * k / denom;
  return {value, bound};
}

} // namespace mzv
} // namespace qh
