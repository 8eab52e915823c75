#include "qh/peaks.hpp"

#include <functional>
#include <stdexcept>

#include "qh/bernoulli.hpp"
#include "qh/config.hpp"
#include "qh/errors.hpp"

namespace qh::peaks {

namespace {

// Terms count as negligible once 200 in a row fall below this relative size.
constexpr long kQuietRun = 200;
constexpr long kHardCap = 100000000;

BigReal relative_cutoff() {
  return BigReal::pow_si(10, -(static_cast<long>(config().precision_digits) + 10));
}

// ln of one series term at index n: sum lnGamma(alpha n + a) − sum lnGamma(beta n + b) + n ln x.
class TermGen {
 public:
  TermGen(const PeakSeriesParams& p, const BigReal& x) : p_(p), lnx_(x.log()) {}

  BigReal log_term(long n) const {
    BigReal s = lnx_ * n;
    for (std::size_t r = 0; r < p_.alphas.size(); ++r)
      s += log_gamma(BigReal::of(p_.alphas[r] * Rational(n) + p_.a[r]));
    for (std::size_t r = 0; r < p_.betas.size(); ++r)
      s -= log_gamma(BigReal::of(p_.betas[r] * Rational(n) + p_.b[r]));
    return s;
  }

  BigReal term(long n) const { return log_term(n).exp(); }

 private:
  const PeakSeriesParams& p_;
  BigReal lnx_;
};

struct SumResult {
  BigReal total;
  long terms = 0;
};

// Sums the series once, feeding every term to `visit`, and stops after
// kQuietRun consecutive terms each below 10^−(P+10) relative to the running
// sum (P = session precision in digits).
SumResult sum_series(const PeakSeriesParams& p, const BigReal& x,
                     const std::function<void(long, const BigReal&)>& visit) {
  TermGen gen(p, x);
  const BigReal relcut = relative_cutoff();
  SumResult out;
  long quiet = 0;
  for (long n = 0;; ++n) {
    if (n > kHardCap) throw std::logic_error("sum_series: term cutoff never engaged");
    BigReal t = gen.term(n);
    out.total += t;
    out.terms = n + 1;
    visit(n, t);
    if (t <= out.total * relcut) {
      if (++quiet >= kQuietRun) break;
    } else {
      quiet = 0;
    }
  }
  return out;
}

void require_positive(const std::vector<Rational>& v, const char* what) {
  for (const auto& q : v)
    if (!(q > Rational(0))) throw std::domain_error(std::string("series_params: ") + what + " must be positive");
}

} // namespace

BigReal log_gamma(const BigReal& z) {
  if (!(z > BigReal::of(0L))) throw std::domain_error("log_gamma: argument must be positive");
  const long P = static_cast<long>(config().precision_digits);
  // Shift the argument until Stirling's series converges fast enough that the
  // Bernoulli terms reach 10^−(P+12) well before they turn divergent.
  const long threshold = 50 + (9 * P + 9) / 10;
  const BigReal thr = BigReal::of(threshold);
  BigReal zz = z;
  BigReal shift_prod;
  bool shifted = false;
  if (zz < thr) {
    shift_prod = zz;
    zz += BigReal::of(1L);
    while (zz < thr) {
      shift_prod *= zz;
      zz += BigReal::of(1L);
    }
    shifted = true;
  }
  const BigReal lnz = zz.log();
  BigReal s = (zz - BigReal::of(Rational(1, 2))) * lnz - zz + (BigReal::pi() * 2).log() * Rational(1, 2);
  const BigReal inv = BigReal::of(1L) / zz;
  const BigReal inv2 = inv * inv;
  const BigReal tol = BigReal::pow_si(10, -(P + 12));
  BigReal pw = inv; // z^{−(2k−1)}
  bool converged = false;
  for (unsigned k = 1; k <= 200; ++k) {
    const unsigned long two_k = 2UL * k;
    BigReal term = pw * (bernoulli(static_cast<unsigned>(two_k)) / Rational(static_cast<long>(two_k) * (static_cast<long>(two_k) - 1)));
    s += term;
    if (term.abs() <= tol) {
      converged = true;
      break;
    }
    pw = pw * inv2;
  }
  if (!converged) throw std::logic_error("log_gamma: correction series failed to converge");
  if (shifted) s -= shift_prod.log();
  return s;
}

PeakSeriesParams series_params(const std::vector<Rational>& alphas, const std::vector<Rational>& a,
                               const std::vector<Rational>& betas, const std::vector<Rational>& b) {
  if (alphas.size() != a.size() || betas.size() != b.size())
    throw std::invalid_argument("series_params: scale/shift lists must pair up");
  require_positive(alphas, "alpha scales");
  require_positive(a, "alpha shifts");
  require_positive(betas, "beta scales");
  require_positive(b, "beta shifts");
  PeakSeriesParams p;
  p.alphas = alphas;
  p.a = a;
  p.betas = betas;
  p.b = b;
  Rational sa(0), sb(0), sha(0), shb(0);
  for (const auto& q : alphas) sa += q;
  for (const auto& q : betas) sb += q;
  for (const auto& q : a) sha += q;
  for (const auto& q : b) shb += q;
  p.kappa = sb - sa;
  if (!(p.kappa >= Rational(1)))
    throw std::domain_error("series_params: decay index kappa must be at least 1");
  p.theta = sha - shb + p.kappa / Rational(2);
  BigReal lnh; // exact-rational exponents keep h = exp(sum q ln q − sum q ln q)
  for (const auto& q : alphas) lnh += BigReal::of(q).log() * q;
  for (const auto& q : betas) lnh -= BigReal::of(q).log() * q;
  p.h = lnh.exp();
  return p;
}

BigReal peak_location(const PeakSeriesParams& p, const BigReal& x) {
  if (!(x > BigReal::of(0L))) throw std::domain_error("peak_location: x must be positive");
  return (p.h * x).pow(BigReal::of(Rational(1) / p.kappa));
}

BigReal series_term(const PeakSeriesParams& p, const BigReal& x, long n) {
  if (n < 0) throw std::invalid_argument("series_term: index must be nonnegative");
  if (!(x > BigReal::of(0L))) throw std::domain_error("series_term: x must be positive");
  return TermGen(p, x).term(n);
}

TailWindow tail_window(const PeakSeriesParams& p, const BigReal& x, const Rational& nu) {
  if (!(x >= BigReal::of(10L))) throw std::invalid_argument("tail_window: requires x >= 10");
  if (nu < Rational(0) || nu > Rational(1, 2))
    throw std::invalid_argument("tail_window: window exponent must lie in [0, 1/2]");
  TailWindow w;
  w.x = x;
  w.eps = x.pow(BigReal::of(-nu));
  w.peak = peak_location(p, x);
  const BigReal one = BigReal::of(1L);
  w.n_minus = ((one - w.eps) * w.peak).floor_long();
  if (w.n_minus < 0) w.n_minus = 0;
  w.n_plus = ((one + w.eps) * w.peak).floor_long();
  return w;
}

TailReport tail_report(const PeakSeriesParams& p, const BigReal& x, const Rational& nu) {
  TailReport r;
  r.bounds = tail_window(p, x, nu);
  SumResult sum = sum_series(p, x, [&](long n, const BigReal& t) {
    if (n <= r.bounds.n_minus)
      r.head += t;
    else if (n >= r.bounds.n_plus)
      r.tail += t;
    else
      r.window += t;
  });
  r.total = sum.total;
  r.terms = sum.terms;
  r.head_ratio = r.head / r.total;
  r.tail_ratio = r.tail / r.total;
  return r;
}

std::pair<BigReal, BigReal> tail_ratios(const PeakSeriesParams& p, const BigReal& x,
                                        const Rational& nu) {
  TailReport r = tail_report(p, x, nu);
  return {r.head_ratio, r.tail_ratio};
}

ScalingSequence ScalingSequence::by_name(const std::string& name) {
  if (name == "const1") return ScalingSequence(ScalingKind::Const1);
  if (name == "harmonic") return ScalingSequence(ScalingKind::Harmonic);
  if (name == "symsum") return ScalingSequence(ScalingKind::SymSum);
  if (name == "log1p_pow") return ScalingSequence(ScalingKind::Log1pPow);
  throw std::invalid_argument("ScalingSequence: unknown sequence name '" + name + "'");
}

const char* ScalingSequence::name() const {
  switch (kind_) {
    case ScalingKind::Const1: return "const1";
    case ScalingKind::Harmonic: return "harmonic";
    case ScalingKind::SymSum: return "symsum";
    case ScalingKind::Log1pPow: return "log1p_pow";
  }
  throw std::logic_error("ScalingSequence: bad kind");
}

BigReal ScalingSequence::next() {
  ++n_;
  switch (kind_) {
    case ScalingKind::Const1:
      return BigReal::of(1L);
    case ScalingKind::Harmonic:
      acc1_ += BigReal::of(Rational(1, n_));
      return acc1_;
    case ScalingKind::SymSum:
      // acc1_ = H_n, acc2_ = sum_{j<=n} H_j / j  (double harmonic sum)
      acc1_ += BigReal::of(Rational(1, n_));
      acc2_ += acc1_ / n_;
      return acc2_;
    case ScalingKind::Log1pPow:
      return BigReal::of(n_ + 1).log().pow(2L);
  }
  throw std::logic_error("ScalingSequence: bad kind");
}

BigReal peaking_defect(const PeakSeriesParams& p, const BigReal& x, ScalingSequence bseq, long k) {
  if (k < 0) throw std::invalid_argument("peaking_defect: power must be nonnegative");
  if (!(x > BigReal::of(0L))) throw std::domain_error("peaking_defect: x must be positive");
  const BigReal lnf_k = peak_location(p, x).log().pow(k);
  BigReal weighted, plain;
  SumResult sum = sum_series(p, x, [&](long n, const BigReal& t) {
    if (n == 0) return;
    const BigReal w = t * bseq.next();
    plain += w;
    weighted += (k == 0) ? w : w * BigReal::of(n).log().pow(k);
  });
  return (weighted - lnf_k * plain).abs() / sum.total;
}

BigReal stokes_ratio(const PeakSeriesParams& p, const BigReal& x) {
  if (!(x > BigReal::of(0L))) throw std::domain_error("stokes_ratio: x must be positive");
  for (const auto& q : p.alphas)
    if (q != Rational(1))
      throw UnsupportedError("stokes_ratio: asymptotic normalization implemented only for unit scale parameters");
  for (const auto& q : p.betas)
    if (q != Rational(1))
      throw UnsupportedError("stokes_ratio: asymptotic normalization implemented only for unit scale parameters");
  const BigReal total = sum_series(p, x, [](long, const BigReal&) {}).total;
  const BigReal kap = BigReal::of(p.kappa);
  BigReal denom = (BigReal::pi() * 2).pow(BigReal::of((Rational(1) - p.kappa) / Rational(2)));
  denom = denom / kap.pow(BigReal::of(Rational(1, 2)));
  denom = denom * x.pow(BigReal::of((p.theta + Rational(1, 2)) / p.kappa));
  denom = denom * (kap * x.pow(BigReal::of(Rational(1) / p.kappa))).exp();
  return total / denom;
}

std::pair<BigReal, BigReal> fit_decay(const std::vector<BigReal>& xs,
                                      const std::vector<BigReal>& ratios) {
  if (xs.size() != ratios.size() || xs.size() < 2)
    throw std::invalid_argument("fit_decay: need matching lists with at least two samples");
  const long m = static_cast<long>(xs.size());
  std::vector<BigReal> t(xs.size()), y(xs.size());
  BigReal tbar, ybar;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > BigReal::of(0L))) throw std::domain_error("fit_decay: x samples must be positive");
    if (!(ratios[i] > BigReal::of(0L)) || !(ratios[i] < BigReal::of(1L)))
      throw std::domain_error("fit_decay: ratios must lie strictly between 0 and 1");
    t[i] = xs[i].log();
    y[i] = (-ratios[i].log()).log(); // ln(−ln r)
    tbar += t[i];
    ybar += y[i];
  }
  tbar = tbar / m;
  ybar = ybar / m;
  BigReal num, den;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    num += (t[i] - tbar) * (y[i] - ybar);
    den += (t[i] - tbar) * (t[i] - tbar);
  }
  if (den.is_zero()) throw std::domain_error("fit_decay: x samples must not all coincide");
  const BigReal slope = num / den;
  const BigReal amp = (ybar - slope * tbar).exp();
  return {amp, slope};
}

} // namespace qh::peaks
