#include "qh/gammalimit.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "qh/config.hpp"
#include "qh/jfun.hpp"
#include "qh/mzv.hpp"

namespace qh::gammalimit {
namespace {

int digits_for_bits(long bits) {
  int d = static_cast<int>(std::ceil(static_cast<double>(bits) / 3.3219280948873623));
  return std::max(20, d);
}

// Temporarily raises the session precision so that every default-constructed
// BigReal inside the scope is at least `prec_bits` wide (min-precision
// propagation would otherwise silently cap intermediates at the default).
struct ScopedPrecision {
  RunConfig saved;
  explicit ScopedPrecision(long prec_bits) : saved(config()) {
    if (prec_bits > 0) {
      RunConfig raised = saved;
      raised.precision_digits = std::max(saved.precision_digits, digits_for_bits(prec_bits));
      set_config(raised);
    }
  }
  ~ScopedPrecision() { set_config(saved); }
  ScopedPrecision(const ScopedPrecision&) = delete;
  ScopedPrecision& operator=(const ScopedPrecision&) = delete;
};

void require_cutoff(long n, const char* who) {
  if (n < 1) throw std::invalid_argument(std::string(who) + ": cutoff must be >= 1");
}

// Normalized J rows (8 slots) at each checkpoint, evaluated by one shared
// incremental sweep over the weak-sum formulas.
std::map<long, ModelClass<BigReal>> j_big_at(const std::vector<long>& points, long W) {
  std::set<mzv::Index> wanted;
  for (int row = 0; row < 8; ++row)
    for (const auto& [c, idx] : jfun::sum_formula_terms(row))
      if (!idx.empty()) wanted.insert(idx);
  mzv::SweepRequest req;
  req.weak.assign(wanted.begin(), wanted.end());
  req.checkpoints = points;
  mzv::SweepResult res = mzv::sweep(req, W);

  std::map<long, ModelClass<BigReal>> out;
  for (long n : points) {
    const auto& weak = res.weak.at(n);
    ModelClass<BigReal> cls{};
    for (int row = 0; row < 8; ++row) {
      BigReal acc = BigReal::of(0L, W);
      for (const auto& [c, idx] : jfun::sum_formula_terms(row)) {
        if (idx.empty())
          acc += BigReal::of(c, W);
        else
          acc += weak.at(idx) * c;
      }
      cls[static_cast<std::size_t>(row)] = acc;
    }
    out.emplace(n, std::move(cls));
  }
  return out;
}

struct RowSpec {
  const char* id; // R-index and basis element the row measures
  int ri;         // index into r_all output (i - 1)
  std::size_t slot;
  int w, s;       // tolerance shape ln(n)^w / n^s (slowest observed tail)
};
constexpr RowSpec kTwistorRows[] = {
    {"R1:a", 0, 1, 0, 1},      {"R2:a^2", 1, 2, 0, 1},   {"R3:a^3", 2, 3, 0, 2},
    {"R3:x", 2, 4, 1, 1},      {"R4:a*x", 3, 5, 0, 1},   {"R5:a^2*x", 4, 6, 1, 2},
    {"R6:a^3*x", 5, 7, 0, 1},
};

BigReal target_for(const TwistorTargets& t, std::size_t slot) {
  switch (slot) {
    case 1: return t.a1;
    case 2: return t.a2;
    case 3: return t.a3;
    case 4: return t.chi;
    case 5: return t.achi;
    case 6: return t.a2chi;
    default: return t.a3chi;
  }
}

// Coefficients of Π_{k<=n} (1 + h/k)^{-(N+1)} mod h^{N+1}, evaluated
// incrementally in BigReal (same normalization as the exact cutoff class:
// constant term 1).
std::vector<BigReal> cpn_cutoff_big(int N, long n, long W) {
  std::vector<BigReal> v(static_cast<std::size_t>(N) + 1, BigReal::of(0L, W));
  v[0] = BigReal::of(1L, W);
  for (long k = 1; k <= n; ++k) {
    for (int rep = 0; rep <= N; ++rep) {
      // divide by (1 + h/k): w_0 = v_0, w_j = v_j - w_{j-1}/k
      for (int j = 1; j <= N; ++j) v[static_cast<std::size_t>(j)] -= v[static_cast<std::size_t>(j - 1)] / k;
    }
  }
  return v;
}

} // namespace

HPolynomial h_poly(int i) {
  if (i < 0) throw std::invalid_argument("h_poly: weight must be nonnegative");
  HPolynomial h;
  h.i = i;
  if (i < 2) return h; // no partition of 0 or 1 into parts < i
  std::vector<int> expo(static_cast<std::size_t>(i - 1), 0);
  auto emit = [&]() {
    Rational c(1);
    for (int e : expo)
      if (e > 1) c /= factorial(static_cast<unsigned long>(e));
    h.terms.emplace_back(c, expo);
  };
  // enumerate exponent vectors with sum over parts j·e_j equal to i
  auto rec = [&](auto&& self, int part, int remaining) -> void {
    if (part > i - 1) {
      if (remaining == 0) emit();
      return;
    }
    for (int e = 0; e * part <= remaining; ++e) {
      expo[static_cast<std::size_t>(part - 1)] = e;
      self(self, part + 1, remaining - e * part);
    }
    expo[static_cast<std::size_t>(part - 1)] = 0;
  };
  rec(rec, 1, i);
  return h;
}

ModelClass<Rational> twistor_j_class(long n) {
  require_cutoff(n, "twistor_j_class");
  jfun::TwistorJ j = jfun::twistor_j_sum_formula(n);
  ModelClass<Rational> out{};
  for (std::size_t k = 0; k < 4; ++k) {
    out[k] = j.alpha[k];
    out[4 + k] = j.chi[k];
  }
  return out;
}

std::array<ModelClass<LogPoly>, 6> r_exact(long n) {
  require_cutoff(n, "r_exact");
  ModelClass<Rational> jq = twistor_j_class(n);
  ModelClass<LogPoly> j{};
  for (std::size_t s = 0; s < 8; ++s) j[s] = LogPoly::monomial(jq[s], 0);
  auto r = r_all<LogPoly>(j, LogPoly::x());
  for (int i = 2; i <= 6; ++i)
    for (std::size_t s = 0; s < 8; ++s)
      if (r[static_cast<std::size_t>(i - 1)][s].degree() > 0)
        throw std::logic_error("r_exact: log terms failed to cancel in row " + std::to_string(i));
  return r;
}

std::array<ModelClass<BigReal>, 6> r_big(long n, long prec_bits) {
  require_cutoff(n, "r_big");
  ScopedPrecision scope(prec_bits);
  const long W = BigReal::default_bits();
  ModelClass<BigReal> j = j_big_at({n}, W).at(n);
  BigReal L = BigReal::of(n, W).log();
  return r_all<BigReal>(j, L);
}

std::vector<BigReal> r_sequence(const Space& sp, int i, long n, long prec_bits) {
  require_cutoff(n, "r_sequence");
  ScopedPrecision scope(prec_bits);
  const long W = BigReal::default_bits();
  const int top = static_cast<int>(sp.real_degree(sp.dim() - 1) / 2);
  if (i < 0 || i > top) throw std::invalid_argument("r_sequence: row index out of range");
  std::vector<BigReal> out(sp.dim(), BigReal::of(0L, W));
  if (i == 0) {
    out[0] = BigReal::of(1L, W);
    return out;
  }
  if (sp.id == SpaceId::Projective) {
    // log of e^{c1 L}·(cutoff class) is a pure scalar series, so the rows are
    // (N+1)·(delta_{i,1}·L + (−1)^i ζ_n(i)/i)·h^i with no cross-terms.
    BigReal zi = mzv::strict_big({i}, n, W);
    BigReal row = zi * Rational(i % 2 == 0 ? 1 : -1, i);
    if (i == 1) row += BigReal::of(n, W).log();
    out[static_cast<std::size_t>(i)] = row * Rational(sp.N + 1);
    return out;
  }
  auto rows = r_big(n); // ambient scope already carries the working precision
  const auto& cls = rows[static_cast<std::size_t>(i - 1)];
  for (std::size_t s = 0; s < 8; ++s)
    if (model_weight(s) == i) out[s] = cls[s];
  return out;
}

Rational r2_reduction(long n) {
  require_cutoff(n, "r2_reduction");
  return mzv::strict_exact({2}, n) / Rational(2);
}

std::pair<Rational, Rational> r3_reduction(long n) {
  require_cutoff(n, "r3_reduction");
  Rational z3 = mzv::strict_exact({3}, n);
  Rational z21 = mzv::strict_exact({2, 1}, n);
  return {z3 * Rational(-1, 3), -(z3 + z21)};
}

Rational r4_reduction(long n) {
  require_cutoff(n, "r4_reduction");
  return mzv::strict_exact({2, 2}, n) + mzv::strict_exact({3, 1}, n);
}

Rational r5_reduction(long n) {
  require_cutoff(n, "r5_reduction");
  return mzv::strict_exact({2, 2, 1}, n) / Rational(2) - mzv::strict_exact({2, 3}, n) / Rational(2) -
         mzv::strict_exact({3, 2}, n) - mzv::strict_exact({4, 1}, n) / Rational(2) -
         mzv::strict_exact({5}, n) * Rational(9, 10);
}

Rational r6_reduction(long n) {
  require_cutoff(n, "r6_reduction");
  Rational half(1, 2);
  return mzv::strict_exact({6}, n) * Rational(7, 6) +
         half * (mzv::strict_exact({3, 3}, n) + mzv::strict_exact({4, 2}, n) -
                 mzv::strict_exact({2, 2, 2}, n) - mzv::strict_exact({2, 3, 1}, n) -
                 mzv::strict_exact({3, 2, 1}, n));
}

TwistorTargets twistor_targets(long prec_bits) {
  const long W = prec_bits > 0 ? prec_bits : BigReal::default_bits();
  Space sp = Space::twistor();
  auto ch = sp.chern_character(); // ch_1..ch_6 over the 8-element basis
  std::array<BigReal, 8> row;
  row.fill(BigReal::of(0L, W));
  for (int k = 1; k <= 6; ++k) {
    BigReal factor = k == 1 ? -BigReal::euler_gamma(W)
                            : BigReal::zeta_ref(static_cast<unsigned long>(k), W) *
                                  (factorial(static_cast<unsigned long>(k - 1)) *
                                   Rational(k % 2 == 0 ? 1 : -1));
    const auto& chk = ch[static_cast<std::size_t>(k - 1)];
    for (std::size_t s = 0; s < 8; ++s) row[s] += factor * chk[s];
  }
  return {row[1], row[2], row[3], row[4], row[5], row[6], row[7]};
}

LimitReport limit_report_twistor(const std::vector<long>& schedule, const Rational& tol_scale,
                                 bool richardson, long prec_bits) {
  if (schedule.empty()) throw std::invalid_argument("limit_report_twistor: empty schedule");
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    require_cutoff(schedule[k], "limit_report_twistor");
    if (k > 0 && schedule[k] <= schedule[k - 1])
      throw std::invalid_argument("limit_report_twistor: schedule must be strictly increasing");
  }
  if (richardson && schedule.size() < 2)
    throw std::invalid_argument("limit_report_twistor: richardson needs two schedule points");

  ScopedPrecision scope(prec_bits);
  const long W = BigReal::default_bits();
  const long n2 = schedule.back();
  const long n1 = richardson ? schedule[schedule.size() - 2] : 0;

  std::vector<long> points = richardson ? std::vector<long>{n1, n2} : std::vector<long>{n2};
  auto j = j_big_at(points, W);
  auto r2 = r_all<BigReal>(j.at(n2), BigReal::of(n2, W).log());
  std::array<ModelClass<BigReal>, 6> r1{};
  if (richardson) r1 = r_all<BigReal>(j.at(n1), BigReal::of(n1, W).log());

  TwistorTargets targets = twistor_targets(W);
  BigReal lnn = BigReal::of(n2, W).log();

  LimitReport rep;
  for (const RowSpec& spec : kTwistorRows) {
    RRow row;
    row.id = spec.id;
    BigReal v2 = r2[static_cast<std::size_t>(spec.ri)][spec.slot];
    if (richardson) {
      BigReal v1 = r1[static_cast<std::size_t>(spec.ri)][spec.slot];
      row.estimate = v2 * Rational(n2, n2 - n1) - v1 * Rational(n1, n2 - n1);
    } else {
      row.estimate = v2;
    }
    row.target = target_for(targets, spec.slot);
    row.deviation = (row.estimate - row.target).abs();
    row.tolerance = BigReal::of(tol_scale, W) * lnn.pow(spec.w) / BigReal::of(n2, W).pow(spec.s);
    row.pass = row.deviation <= row.tolerance;
    rep.all_pass = rep.all_pass && row.pass;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

LimitReport limit_report_cpn(int N, long n, const BigReal& tolerance, long prec_bits) {
  require_cutoff(n, "limit_report_cpn");
  Space sp = Space::projective(N);
  ScopedPrecision scope(prec_bits);
  const long W = BigReal::default_bits();

  std::vector<BigReal> cutoff = cpn_cutoff_big(N, n, W);
  std::vector<BigReal> gamma = gamma_class(sp, W);
  BigReal Lc = BigReal::of(n, W).log() * Rational(N + 1); // c1 = (N+1)·h

  // e^{Lc·h} · cutoff, truncated past h^N
  std::vector<BigReal> lpow(static_cast<std::size_t>(N) + 1, BigReal::of(0L, W));
  lpow[0] = BigReal::of(1L, W);
  for (int jj = 1; jj <= N; ++jj)
    lpow[static_cast<std::size_t>(jj)] = lpow[static_cast<std::size_t>(jj - 1)] * Lc * Rational(1, jj);
  auto names = sp.basis_names();

  LimitReport rep;
  for (int k = 0; k <= N; ++k) {
    BigReal est = BigReal::of(0L, W);
    for (int jj = 0; jj <= k; ++jj)
      est += lpow[static_cast<std::size_t>(jj)] * cutoff[static_cast<std::size_t>(k - jj)];
    RRow row;
    row.id = "R" + std::to_string(k) + ":" + names[static_cast<std::size_t>(k)];
    row.estimate = est;
    row.target = gamma[static_cast<std::size_t>(k)];
    row.deviation = (est - row.target).abs();
    row.tolerance = tolerance;
    row.pass = row.deviation <= row.tolerance;
    rep.all_pass = rep.all_pass && row.pass;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

} // namespace qh::gammalimit
