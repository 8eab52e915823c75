#include "qh/dmod.hpp"

#include <gmp.h>

#include <algorithm>
#include <limits>
#include <random>
#include <stdexcept>
#include <utility>

#include "qh/config.hpp"
#include "qh/errors.hpp"

namespace qh::dmod {

namespace {

Matrix<RF> to_rf(const Matrix<Rational>& m) {
  Matrix<RF> r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) r(i, j) = RF(m(i, j));
  return r;
}

void require_square_connection(const FormalConnection& c) {
  if (c.A.rows() != c.n || c.A.cols() != c.n)
    throw std::invalid_argument("FormalConnection: square matrix required");
}

// Laurent coefficient of u^k of an entry.
Rational laurent_at(const RF& f, long k) { return f.laurent(k, k)[0]; }

// Divisors of |v| by trial division; v must be a nonzero integer Rational
// that fits budgeted bounds.
std::vector<long> divisors_of(const Rational& v) {
  if (!v.is_integer() || v.is_zero())
    throw std::logic_error("divisors_of: nonzero integer required");
  const Rational av = v.abs();
  if (av > Rational(1000000000000L))
    throw UnsupportedError("eigenvalue search: characteristic coefficients exceed the factoring budget");
  long x = av.to_long();
  std::vector<long> ds;
  for (long d = 1; d * d <= x; ++d) {
    if (x % d == 0) {
      ds.push_back(d);
      if (d != x / d) ds.push_back(x / d);
    }
  }
  return ds;
}

// Finds one rational root of a nonconstant polynomial with rational
// coefficients, or reports that none exists.
bool find_rational_root(const Poly<Rational>& p, Rational& root) {
  if (p.coeff(0).is_zero()) {
    root = Rational(0);
    return true;
  }
  // Scale to integer coefficients: multiply by the lcm of denominators.
  mpz_t lcm;
  mpz_init_set_ui(lcm, 1);
  for (const Rational& c : p.coeffs()) mpz_lcm(lcm, lcm, mpq_denref(c.raw()));
  mpq_t scale_q;
  mpq_init(scale_q);
  mpq_set_z(scale_q, lcm);
  const Rational scale = Rational::from_mpq(scale_q);
  mpq_clear(scale_q);
  mpz_clear(lcm);
  const Rational c0 = p.coeff(0) * scale;
  const Rational cn = p.coeff(static_cast<std::size_t>(p.degree())) * scale;
  for (long num : divisors_of(c0)) {
    for (long den : divisors_of(cn)) {
      for (int sign : {1, -1}) {
        const Rational cand(sign * num, den);
        if (p.evaluate(cand, Rational(1)).is_zero()) {
          root = cand;
          return true;
        }
      }
    }
  }
  return false;
}

// Exact factorization of a monic characteristic polynomial into rational
// roots with multiplicities; UnsupportedError when an irrational (or complex)
// factor remains.
std::vector<EigenGroup> rational_spectrum(Poly<Rational> chi) {
  std::vector<EigenGroup> out;
  while (chi.degree() > 0) {
    Rational root;
    if (!find_rational_root(chi, root))
      throw UnsupportedError("eigenvalue extraction: spectrum does not factor over the rationals");
    const Poly<Rational> lin(std::vector<Rational>{-root, Rational(1)});
    std::size_t mult = 0;
    while (true) {
      auto [quot, rem] = divmod(chi, lin);
      if (!rem.is_zero()) break;
      chi = quot;
      ++mult;
    }
    out.push_back({root, mult});
  }
  std::sort(out.begin(), out.end(),
            [](const EigenGroup& a, const EigenGroup& b) { return a.value < b.value; });
  return out;
}

struct KrylovData {
  Matrix<RF> columns;   // [e, De, ..., D^{n-1}e]
  std::vector<RF> next; // D^n e
};

KrylovData krylov_data(const FormalConnection& c, const std::vector<RF>& e) {
  if (e.size() != c.n) throw std::invalid_argument("krylov: vector size mismatch");
  Matrix<RF> m(c.n, c.n);
  std::vector<RF> v = e;
  for (std::size_t k = 0; k < c.n; ++k) {
    for (std::size_t i = 0; i < c.n; ++i) m(i, k) = v[i];
    v = apply_d(c, v);
  }
  return {std::move(m), std::move(v)};
}

Matrix<Rational> block_diagonal_part(const Matrix<Rational>& m,
                                     const std::vector<std::size_t>& offsets,
                                     const std::vector<std::size_t>& sizes) {
  Matrix<Rational> r(m.rows(), m.cols());
  for (std::size_t g = 0; g < offsets.size(); ++g)
    for (std::size_t i = 0; i < sizes[g]; ++i)
      for (std::size_t j = 0; j < sizes[g]; ++j)
        r(offsets[g] + i, offsets[g] + j) = m(offsets[g] + i, offsets[g] + j);
  return r;
}

// Solves La X - X Lb = R exactly (spectra of La and Lb must be disjoint).
Matrix<Rational> solve_sylvester(const Matrix<Rational>& la, const Matrix<Rational>& lb,
                                 const Matrix<Rational>& r) {
  const std::size_t ma = la.rows(), mb = lb.rows();
  Matrix<Rational> sys(ma * mb, ma * mb);
  std::vector<Rational> rhs(ma * mb);
  for (std::size_t i = 0; i < ma; ++i)
    for (std::size_t j = 0; j < mb; ++j) {
      const std::size_t row = i * mb + j;
      rhs[row] = r(i, j);
      for (std::size_t p = 0; p < ma; ++p) sys(row, p * mb + j) += la(i, p);
      for (std::size_t q = 0; q < mb; ++q) sys(row, i * mb + q) -= lb(q, j);
    }
  std::vector<Rational> x;
  try {
    x = sys.solve(rhs);
  } catch (const SingularMatrix&) {
    throw std::domain_error("leading_split: spectral overlap between eigenvalue groups");
  }
  Matrix<Rational> out(ma, mb);
  for (std::size_t i = 0; i < ma; ++i)
    for (std::size_t j = 0; j < mb; ++j) out(i, j) = x[i * mb + j];
  return out;
}

} // namespace

FormalConnection make_connection(Matrix<RF> A, std::string label) {
  if (A.rows() != A.cols()) throw std::invalid_argument("make_connection: square matrix required");
  FormalConnection c;
  c.n = A.rows();
  c.A = std::move(A);
  c.label = std::move(label);
  return c;
}

long pole_order(const FormalConnection& c) {
  require_square_connection(c);
  long p = 0;
  for (std::size_t i = 0; i < c.n; ++i)
    for (std::size_t j = 0; j < c.n; ++j) {
      const auto v = c.A(i, j).valuation();
      if (v && -*v > p) p = -*v;
    }
  return p;
}

FormalConnection quantum_connection(const Space& sp, const Rational& q, const Rational& chi) {
  const Matrix<Rational> mu = grading_matrix(sp);
  const Matrix<Rational> c1 = c1_matrix(sp, q, chi);
  const std::size_t n = sp.dim();
  Matrix<RF> a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      RF entry;
      if (!mu(i, j).is_zero()) entry += RF::u_power(mu(i, j), -1);
      if (!c1(i, j).is_zero()) entry += RF::u_power(c1(i, j), -2);
      a(i, j) = entry;
    }
  std::string label = sp.id == SpaceId::Projective
                          ? "projective(" + std::to_string(sp.N) + ");q=" + q.str()
                          : "main-block;q=" + q.str() + ";chi=" + chi.str();
  return make_connection(std::move(a), std::move(label));
}

FormalConnection y_block_connection(const Rational& q) {
  const Matrix<Rational> cy = y_block_matrix(q);
  Matrix<RF> a(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      RF entry;
      if (i == j && i > 0) entry += RF::u_power(Rational(static_cast<long>(i)), -1);
      if (!cy(i, j).is_zero()) entry += RF::u_power(cy(i, j), -2);
      a(i, j) = entry;
    }
  return make_connection(std::move(a), "y-block;q=" + q.str());
}

FormalConnection twist(const FormalConnection& c, const Rational& w) {
  require_square_connection(c);
  FormalConnection t = c;
  for (std::size_t i = 0; i < c.n; ++i) t.A(i, i) -= RF::u_power(w, -2);
  return t;
}

FormalConnection twist_regular(const FormalConnection& c, const Rational& w) {
  require_square_connection(c);
  FormalConnection t = c;
  for (std::size_t i = 0; i < c.n; ++i) t.A(i, i) -= RF::u_power(w, -1);
  return t;
}

FormalConnection direct_sum(const FormalConnection& a, const FormalConnection& b) {
  Matrix<RF> m(a.n + b.n, a.n + b.n);
  for (std::size_t i = 0; i < a.n; ++i)
    for (std::size_t j = 0; j < a.n; ++j) m(i, j) = a.A(i, j);
  for (std::size_t i = 0; i < b.n; ++i)
    for (std::size_t j = 0; j < b.n; ++j) m(a.n + i, a.n + j) = b.A(i, j);
  return make_connection(std::move(m), a.label + "+" + b.label);
}

FormalConnection conjugate(const FormalConnection& c, const Matrix<Rational>& S) {
  require_square_connection(c);
  if (S.rows() != c.n || S.cols() != c.n)
    throw std::invalid_argument("conjugate: size mismatch");
  const Matrix<RF> s = to_rf(S);
  return make_connection(s.inverse() * c.A * s, c.label);
}

std::vector<RF> apply_d(const FormalConnection& c, const std::vector<RF>& v) {
  require_square_connection(c);
  if (v.size() != c.n) throw std::invalid_argument("apply_d: size mismatch");
  const RF u = RF::u();
  std::vector<RF> av = c.A.apply(v);
  std::vector<RF> out(c.n);
  for (std::size_t i = 0; i < c.n; ++i) out[i] = u * (v[i].derivative() + av[i]);
  return out;
}

std::size_t krylov_rank(const FormalConnection& c, const std::vector<RF>& e) {
  return krylov_data(c, e).columns.rank();
}

std::size_t multiplication_krylov_rank(const Matrix<Rational>& M, std::size_t basis_index) {
  if (M.rows() != M.cols()) throw std::invalid_argument("multiplication_krylov_rank: square matrix required");
  const std::size_t n = M.rows();
  if (basis_index >= n) throw std::invalid_argument("multiplication_krylov_rank: basis index out of range");
  std::vector<Rational> v(n);
  v[basis_index] = Rational(1);
  Matrix<Rational> k(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    for (std::size_t i = 0; i < n; ++i) k(i, col) = v[i];
    v = M.apply(v);
  }
  return k.rank();
}

std::vector<std::vector<RF>> default_candidates(std::size_t n) {
  std::vector<std::vector<RF>> cands;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<RF> e(n);
    e[i] = RF(1);
    cands.push_back(std::move(e));
  }
  cands.emplace_back(n, RF(1)); // all-ones
  std::mt19937_64 rng(config().seed);
  for (int r = 0; r < 20; ++r) {
    std::vector<RF> v(n);
    for (std::size_t i = 0; i < n; ++i)
      v[i] = RF(static_cast<long>(rng() % 7) - 3);
    cands.push_back(std::move(v));
  }
  return cands;
}

CyclicSearch cyclic_vector(const FormalConnection& c) {
  return cyclic_vector(c, default_candidates(c.n));
}

CyclicSearch cyclic_vector(const FormalConnection& c,
                           const std::vector<std::vector<RF>>& candidates) {
  require_square_connection(c);
  if (candidates.empty()) throw std::invalid_argument("cyclic_vector: empty candidate list");
  std::size_t best = 0;
  for (std::size_t idx = 0; idx < candidates.size(); ++idx) {
    const std::size_t r = krylov_rank(c, candidates[idx]);
    if (r == c.n) return {candidates[idx], idx, r};
    best = std::max(best, r);
  }
  throw std::domain_error("cyclic_vector: no cyclic candidate found (max Krylov rank " +
                          std::to_string(best) + " of " + std::to_string(c.n) + ")");
}

DiffOperator associated_operator(const FormalConnection& c, const std::vector<RF>& e) {
  KrylovData kd = krylov_data(c, e);
  std::vector<RF> rhs(c.n);
  for (std::size_t i = 0; i < c.n; ++i) rhs[i] = -kd.next[i];
  DiffOperator op;
  op.order = c.n;
  op.coeffs = kd.columns.solve(rhs);
  return op;
}

long irregularity(const DiffOperator& L) {
  long irr = 0;
  for (const RF& a : L.coeffs) {
    const auto v = a.valuation();
    if (v && -*v > irr) irr = -*v;
  }
  return irr;
}

DiffOperator parse_operator(const std::string& text) {
  std::vector<std::pair<std::size_t, RF>> terms;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(';', pos);
    if (end == std::string::npos) end = text.size();
    std::string piece = text.substr(pos, end - pos);
    pos = end + 1;
    const std::size_t from = piece.find_first_not_of(" \t");
    if (from == std::string::npos) continue; // empty segment
    const std::size_t to = piece.find_last_not_of(" \t");
    piece = piece.substr(from, to - from + 1);
    if (piece.size() < 2 || piece[0] != 'd')
      throw std::invalid_argument("parse_operator: expected 'dK:expr' in '" + piece + "'");
    const std::size_t colon = piece.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("parse_operator: missing ':' in '" + piece + "'");
    std::size_t k = 0;
    try {
      std::size_t used = 0;
      k = std::stoul(piece.substr(1, colon - 1), &used);
      if (used != colon - 1) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw std::invalid_argument("parse_operator: bad derivative index in '" + piece + "'");
    }
    for (const auto& t : terms)
      if (t.first == k) throw std::invalid_argument("parse_operator: duplicate term d" + std::to_string(k));
    terms.emplace_back(k, parse_rational_function(piece.substr(colon + 1)));
  }
  if (terms.empty()) throw std::invalid_argument("parse_operator: no terms");
  std::size_t order = 0;
  for (const auto& t : terms) order = std::max(order, t.first);
  if (order == 0) throw std::invalid_argument("parse_operator: operator order must be positive");
  RF lead;
  for (const auto& t : terms)
    if (t.first == order) lead = t.second;
  if (lead.is_zero()) throw std::invalid_argument("parse_operator: top coefficient must be nonzero");
  DiffOperator op;
  op.order = order;
  op.coeffs.assign(order, RF());
  for (const auto& t : terms)
    if (t.first < order) op.coeffs[t.first] = t.second / lead;
  return op;
}

std::string operator_str(const DiffOperator& L) {
  std::string s = "d" + std::to_string(L.order) + ":1";
  for (std::size_t k = L.order; k-- > 0;) {
    if (L.coeffs[k].is_zero()) continue;
    s += "; d" + std::to_string(k) + ":" + L.coeffs[k].str();
  }
  return s;
}

LeadingDecomposition leading_data(const FormalConnection& c) {
  require_square_connection(c);
  LeadingDecomposition d;
  d.pole = pole_order(c);
  d.leading = Matrix<Rational>(c.n, c.n);
  for (std::size_t i = 0; i < c.n; ++i)
    for (std::size_t j = 0; j < c.n; ++j) d.leading(i, j) = laurent_at(c.A(i, j), -d.pole);
  d.groups = rational_spectrum(d.leading.charpoly());
  return d;
}

LeadingSplit leading_split(const FormalConnection& c, unsigned K) {
  require_square_connection(c);
  if (K == 0) throw std::invalid_argument("leading_split: truncation order must be positive");
  if (pole_order(c) != 2)
    throw UnsupportedError("leading_split: implemented for pole order 2 only");
  LeadingSplit out;
  out.data = leading_data(c);
  const std::size_t n = c.n;
  const auto& groups = out.data.groups;
  if (groups.size() < 2)
    throw std::domain_error("leading_split: spectral overlap (a single eigenvalue group cannot be split)");

  // Constant change of basis grouping the generalized eigenspaces.
  std::vector<std::size_t> sizes, offsets;
  Matrix<Rational> S(n, n);
  std::size_t col = 0;
  for (const auto& g : groups) {
    offsets.push_back(col);
    sizes.push_back(g.multiplicity);
    Matrix<Rational> shifted = out.data.leading;
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= g.value;
    Matrix<Rational> power = Matrix<Rational>::identity(n);
    for (std::size_t k = 0; k < g.multiplicity; ++k) power = power * shifted;
    const auto basis = power.kernel();
    if (basis.size() != g.multiplicity)
      throw std::logic_error("leading_split: generalized eigenspace dimension mismatch");
    for (const auto& v : basis) {
      for (std::size_t i = 0; i < n; ++i) S(i, col) = v[i];
      ++col;
    }
  }
  const Matrix<Rational> Sinv = S.inverse();

  // Series of B(u) = u^2 A(u) in the grouped basis.
  std::vector<Matrix<Rational>> bhat(K + 1, Matrix<Rational>(n, n));
  for (long k = 0; k <= static_cast<long>(K); ++k) {
    Matrix<Rational> bk(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) bk(i, j) = laurent_at(c.A(i, j), k - 2);
    bhat[k] = Sinv * bk * S;
  }

  // Order-by-order gauge: T(u) = Id + sum T_k u^k with off-diagonal T_k
  // solving Sylvester equations against the leading blocks, and the diagonal
  // blocks of the transformed series absorbed into the result.
  std::vector<Matrix<Rational>> T(K + 1, Matrix<Rational>(n, n));
  std::vector<Matrix<Rational>> D(K + 1, Matrix<Rational>(n, n));
  T[0] = Matrix<Rational>::identity(n);
  D[0] = bhat[0];
  for (std::size_t k = 1; k <= K; ++k) {
    Matrix<Rational> ck(n, n);
    for (std::size_t i = 1; i <= k; ++i) ck = ck + bhat[i] * T[k - i];
    ck = ck + T[k - 1] * Rational(static_cast<long>(k) - 1);
    for (std::size_t i = 1; i < k; ++i) ck = ck - T[k - i] * D[i];
    D[k] = block_diagonal_part(ck, offsets, sizes);
    for (std::size_t ga = 0; ga < groups.size(); ++ga)
      for (std::size_t gb = 0; gb < groups.size(); ++gb) {
        if (ga == gb) continue;
        Matrix<Rational> la(sizes[ga], sizes[ga]), lb(sizes[gb], sizes[gb]), rhs(sizes[ga], sizes[gb]);
        for (std::size_t i = 0; i < sizes[ga]; ++i)
          for (std::size_t j = 0; j < sizes[ga]; ++j) la(i, j) = D[0](offsets[ga] + i, offsets[ga] + j);
        for (std::size_t i = 0; i < sizes[gb]; ++i)
          for (std::size_t j = 0; j < sizes[gb]; ++j) lb(i, j) = D[0](offsets[gb] + i, offsets[gb] + j);
        for (std::size_t i = 0; i < sizes[ga]; ++i)
          for (std::size_t j = 0; j < sizes[gb]; ++j) rhs(i, j) = -ck(offsets[ga] + i, offsets[gb] + j);
        const Matrix<Rational> x = solve_sylvester(la, lb, rhs);
        for (std::size_t i = 0; i < sizes[ga]; ++i)
          for (std::size_t j = 0; j < sizes[gb]; ++j) T[k](offsets[ga] + i, offsets[gb] + j) = x(i, j);
      }
  }

  // Assemble the polynomial gauge and conjugate exactly.
  Matrix<RF> tu(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      RF entry;
      for (std::size_t k = 0; k <= K; ++k)
        if (!T[k](i, j).is_zero()) entry += RF::u_power(T[k](i, j), static_cast<long>(k));
      tu(i, j) = entry;
    }
  out.gauge = to_rf(S) * tu;
  Matrix<RF> gp(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) gp(i, j) = out.gauge(i, j).derivative();
  out.transformed = out.gauge.inverse() * (c.A * out.gauge + gp);
  out.group_offsets = offsets;

  long minval = std::numeric_limits<long>::max();
  for (std::size_t ga = 0; ga < groups.size(); ++ga)
    for (std::size_t gb = 0; gb < groups.size(); ++gb) {
      if (ga == gb) continue;
      for (std::size_t i = 0; i < sizes[ga]; ++i)
        for (std::size_t j = 0; j < sizes[gb]; ++j) {
          const auto v = out.transformed(offsets[ga] + i, offsets[gb] + j).valuation();
          if (v && *v < minval) minval = *v;
        }
    }
  out.off_diagonal_valuation = minval;
  return out;
}

ExpTypeReport exp_type_report(const FormalConnection& c) {
  require_square_connection(c);
  ExpTypeReport rep;
  rep.label = c.label;
  rep.pole = pole_order(c);
  rep.dimension = c.n;
  if (rep.pole >= 3)
    throw UnsupportedError("exp_type_report: pole order 3 or higher is out of scope");

  const CyclicSearch cyc = cyclic_vector(c);
  rep.untwisted_irr = irregularity(associated_operator(c, cyc.vector));

  if (rep.pole <= 1) {
    rep.exponential_type = true;
    rep.verdict = "regular singular";
    return rep;
  }

  const LeadingDecomposition ld = leading_data(c);

  // Leading blocks after the splitting gauge (trivial when only one group).
  std::vector<Matrix<Rational>> blocks;
  std::vector<std::size_t> sizes;
  if (ld.groups.size() >= 2) {
    const LeadingSplit split = leading_split(c, 2);
    for (std::size_t g = 0; g < ld.groups.size(); ++g) {
      const std::size_t off = split.group_offsets[g];
      const std::size_t m = ld.groups[g].multiplicity;
      Matrix<Rational> b(m, m);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
          b(i, j) = laurent_at(split.transformed(off + i, off + j), -2);
      blocks.push_back(std::move(b));
      sizes.push_back(m);
    }
  } else {
    blocks.push_back(ld.leading);
    sizes.push_back(c.n);
  }

  bool all_ok = true;
  for (std::size_t g = 0; g < ld.groups.size(); ++g) {
    EigenReport er;
    er.value = ld.groups[g].value;
    er.multiplicity = ld.groups[g].multiplicity;
    er.expected = c.n - er.multiplicity;
    const FormalConnection tw = twist(c, er.value);
    const CyclicSearch tcyc = cyclic_vector(tw);
    er.twisted_irr = irregularity(associated_operator(tw, tcyc.vector));
    er.shifted_leading_invertible = true;
    for (std::size_t g2 = 0; g2 < ld.groups.size() && ld.groups.size() >= 2; ++g2) {
      if (g2 == g) continue;
      Matrix<Rational> shifted = blocks[g2];
      for (std::size_t i = 0; i < sizes[g2]; ++i) shifted(i, i) -= er.value;
      if (shifted.determinant().is_zero()) er.shifted_leading_invertible = false;
    }
    if (er.twisted_irr != static_cast<long>(er.expected) || !er.shifted_leading_invertible)
      all_ok = false;
    rep.eigenvalues.push_back(std::move(er));
  }
  rep.exponential_type = all_ok;
  rep.verdict = all_ok ? "unramified exponential type" : "inconclusive";
  return rep;
}

} // namespace qh::dmod
