// C interface: thin JSON-producing wrappers over the core library.
//
// Error contract (see include/qh/qh_c.h): exceptions map to status codes —
// std::invalid_argument -> QH_E_USAGE, std::domain_error -> QH_E_DOMAIN,
// SingularMatrix -> QH_E_SINGULAR, UnsupportedError -> QH_E_UNSUPPORTED,
// anything else -> QH_E_INTERNAL.  Results are malloc'd JSON strings.

#include "qh/qh_c.h"

#include <cstdlib>
#include <cstring>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qh/bigreal.hpp"
#include "qh/cohmodel.hpp"
#include "qh/config.hpp"
#include "qh/dmod.hpp"
#include "qh/errors.hpp"
#include "qh/gammalimit.hpp"
#include "qh/jfun.hpp"
#include "qh/matrix.hpp"
#include "qh/mzv.hpp"
#include "qh/peaks.hpp"
#include "qh/poly.hpp"
#include "qh/ratfun.hpp"
#include "qh/rational.hpp"
#include "qh/verify.hpp"

struct qh_session {
  std::string last_error;
};

namespace {

using ordered = nlohmann::ordered_json;
using qh::BigReal;
using qh::Rational;

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p != nullptr) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

template <typename Fn>
qh_status guard(qh_session* s, char** out_json, Fn&& fn) {
  if (s == nullptr) return QH_E_USAGE;
  try {
    const std::string json = fn();
    if (out_json != nullptr) {
      char* p = dup_string(json);
      if (p == nullptr) {
        s->last_error = "out of memory";
        return QH_E_INTERNAL;
      }
      *out_json = p;
    }
    s->last_error.clear();
    return QH_OK;
  } catch (const qh::SingularMatrix& e) {
    s->last_error = e.what();
    return QH_E_SINGULAR;
  } catch (const qh::UnsupportedError& e) {
    s->last_error = e.what();
    return QH_E_UNSUPPORTED;
  } catch (const std::invalid_argument& e) {
    s->last_error = e.what();
    return QH_E_USAGE;
  } catch (const std::domain_error& e) {
    s->last_error = e.what();
    return QH_E_DOMAIN;
  } catch (const std::exception& e) {
    s->last_error = e.what();
    return QH_E_INTERNAL;
  } catch (...) {
    s->last_error = "unknown error";
    return QH_E_INTERNAL;
  }
}

std::string require(const char* text, const char* flag) {
  if (text == nullptr || *text == '\0')
    throw std::invalid_argument(std::string(flag) + ": value required");
  return text;
}

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    std::string piece = text.substr(start, comma - start);
    const std::size_t a = piece.find_first_not_of(" \t");
    const std::size_t b = piece.find_last_not_of(" \t");
    parts.push_back(a == std::string::npos ? std::string() : piece.substr(a, b - a + 1));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return parts;
}

// Exact number parser: "p/q", integer, or decimal/scientific text.
Rational parse_number(const std::string& raw, const char* flag) {
  std::string text = raw;
  if (!text.empty() && text[0] == '+') text = text.substr(1);
  if (text.empty()) throw std::invalid_argument(std::string(flag) + ": empty number");
  try {
    if (text.find_first_of(".eE") == std::string::npos) return Rational(text);
    std::size_t epos = text.find_first_of("eE");
    std::string mantissa = text.substr(0, epos);
    long exp10 = 0;
    if (epos != std::string::npos) {
      std::size_t used = 0;
      exp10 = std::stol(text.substr(epos + 1), &used);
      if (used != text.size() - epos - 1) throw std::invalid_argument("trailing exponent text");
    }
    long frac_digits = 0;
    const std::size_t dot = mantissa.find('.');
    if (dot != std::string::npos) {
      frac_digits = static_cast<long>(mantissa.size() - dot - 1);
      mantissa = mantissa.substr(0, dot) + mantissa.substr(dot + 1);
    }
    if (!mantissa.empty() && mantissa[0] == '+') mantissa = mantissa.substr(1);
    if (mantissa.empty() || mantissa == "-") throw std::invalid_argument("empty mantissa");
    return Rational(mantissa) * Rational(10).pow(exp10 - frac_digits);
  } catch (const std::domain_error&) {
    throw std::invalid_argument(std::string(flag) + ": zero denominator in '" + raw + "'");
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string(flag) + ": cannot parse number '" + raw + "'");
  }
}

std::vector<Rational> parse_number_csv(const char* text, const char* flag) {
  std::vector<Rational> out;
  if (text == nullptr || *text == '\0') return out;
  for (const std::string& piece : split_csv(text)) out.push_back(parse_number(piece, flag));
  return out;
}

qh::Space parse_space(const char* text) {
  const std::string name = require(text, "space");
  if (name == "twistor") return qh::Space::twistor();
  if (name.rfind("cpn:", 0) == 0) {
    const std::string tail = name.substr(4);
    std::size_t used = 0;
    int N = 0;
    try {
      N = std::stoi(tail, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tail.size() || N < 1 || N > 64)
      throw std::invalid_argument("space: 'cpn:N' needs an integer N in 1..64");
    return qh::Space::projective(N);
  }
  throw std::invalid_argument("space: expected 'twistor' or 'cpn:N', got '" + name + "'");
}

qh::mzv::Index parse_index(const char* text) {
  const std::string csv = require(text, "index");
  qh::mzv::Index idx;
  for (const std::string& piece : split_csv(csv)) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(piece, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != piece.size())
      throw std::invalid_argument("index: entry '" + piece + "' is not an integer");
    idx.push_back(v);
  }
  qh::mzv::validate_index(idx);
  return idx;
}

ordered jnum(const Rational& r) { return r.str(); }

ordered jnum(const BigReal& v) {
  ordered o;
  o["value"] = v.str();
  o["precision_bits"] = v.precision_bits();
  return o;
}

ordered jindex(const qh::mzv::Index& idx) {
  ordered a = ordered::array();
  for (int v : idx) a.push_back(v);
  return a;
}

ordered jrow(const qh::gammalimit::RRow& row) {
  ordered o;
  o["coefficient"] = row.id;
  o["estimate"] = jnum(row.estimate);
  o["target"] = jnum(row.target);
  o["deviation"] = jnum(row.deviation);
  o["tolerance"] = jnum(row.tolerance);
  o["pass"] = row.pass;
  return o;
}

std::string space_name(const qh::Space& sp) {
  return sp.id == qh::SpaceId::Projective ? "cpn:" + std::to_string(sp.N) : "twistor";
}

} // namespace

extern "C" {

const char* qh_version(void) { return "1.0.0"; }

qh_session* qh_session_new(void) { return new (std::nothrow) qh_session(); }

void qh_session_free(qh_session* s) { delete s; }

const char* qh_last_error(const qh_session* s) {
  return s == nullptr ? "" : s->last_error.c_str();
}

void qh_string_free(char* s) { std::free(s); }

qh_status qh_configure(qh_session* s, int precision_digits, long exact_crossover,
                       double window_exponent, unsigned long long seed, int workers) {
  return guard(s, nullptr, [&] {
    qh::RunConfig cfg = qh::config();
    if (precision_digits > 0) cfg.precision_digits = precision_digits;
    if (exact_crossover > 0) cfg.exact_crossover = exact_crossover;
    if (window_exponent > 0) cfg.window_exponent = window_exponent;
    if (seed != 0) cfg.seed = seed;
    if (workers > 0) cfg.workers = workers;
    qh::set_config(cfg);
    return std::string();
  });
}

qh_status qh_space_dump(qh_session* s, const char* space, const char* q,
                        const char* chi, char** out_json) {
  return guard(s, out_json, [&] {
    const qh::Space sp = parse_space(space);
    const Rational qv = parse_number(q != nullptr && *q != '\0' ? q : "1", "q");
    const Rational chiv = parse_number(chi != nullptr && *chi != '\0' ? chi : "-1", "chi");
    ordered o;
    o["schema"] = "qh-space/1";
    o["space"] = space_name(sp);
    o["rank"] = sp.dim();
    o["fano_index"] = sp.fano_index();
    ordered basis = ordered::array(), degrees = ordered::array();
    const auto names = sp.basis_names();
    for (std::size_t i = 0; i < names.size(); ++i) {
      basis.push_back(names[i]);
      degrees.push_back(sp.real_degree(i));
    }
    o["basis"] = std::move(basis);
    o["real_degrees"] = std::move(degrees);
    ordered ch = ordered::array();
    for (const auto& comp : sp.chern_character()) {
      ordered row = ordered::array();
      for (const Rational& c : comp) row.push_back(jnum(c));
      ch.push_back(std::move(row));
    }
    o["chern_character"] = std::move(ch);
    o["q"] = jnum(qv);
    o["chi"] = jnum(chiv);
    const qh::Matrix<Rational> m = qh::c1_matrix(sp, qv, chiv);
    ordered mat = ordered::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      ordered row = ordered::array();
      for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(jnum(m(i, j)));
      mat.push_back(std::move(row));
    }
    o["c1_matrix"] = std::move(mat);
    const qh::Poly<Rational> cp = m.charpoly();
    ordered cpj = ordered::array();
    for (long i = 0; i <= cp.degree(); ++i) cpj.push_back(jnum(cp.coeff(i)));
    o["charpoly_ascending"] = std::move(cpj);
    return o.dump(2);
  });
}

qh_status qh_mzv_eval(qh_session* s, const char* index, long d, int weak,
                      char** out_json) {
  return guard(s, out_json, [&] {
    const qh::mzv::Index idx = parse_index(index);
    if (d < 0) throw std::invalid_argument("d: cutoff must be >= 0");
    ordered o;
    o["schema"] = "qh-mzv/1";
    o["index"] = jindex(idx);
    o["d"] = d;
    o["kind"] = weak != 0 ? "weak" : "strict";
    o["value"] = jnum(weak != 0 ? qh::mzv::weak_big(idx, d) : qh::mzv::strict_big(idx, d));
    if (d <= 100)
      o["exact"] = jnum(weak != 0 ? qh::mzv::weak_exact(idx, d) : qh::mzv::strict_exact(idx, d));
    return o.dump(2);
  });
}

qh_status qh_mzv_expand(qh_session* s, const char* index, char** out_json) {
  return guard(s, out_json, [&] {
    const qh::mzv::Index idx = parse_index(index);
    ordered o;
    o["schema"] = "qh-mzv-expand/1";
    o["weak"] = jindex(idx);
    ordered terms = ordered::array();
    for (const auto& term : qh::mzv::expand_weak(idx)) {
      ordered t;
      t["index"] = jindex(term.first);
      t["coeff"] = jnum(term.second);
      terms.push_back(std::move(t));
    }
    o["strict_terms"] = std::move(terms);
    return o.dump(2);
  });
}

qh_status qh_j_coefficient(qh_session* s, const char* space, long d,
                           int normalized, char** out_json) {
  return guard(s, out_json, [&] {
    const qh::Space sp = parse_space(space);
    ordered o;
    o["schema"] = "qh-jfun/1";
    o["space"] = space_name(sp);
    o["d"] = d;
    o["normalized"] = normalized != 0;
    if (sp.id == qh::SpaceId::Twistor) {
      const qh::jfun::TwistorJ j =
          normalized != 0 ? qh::jfun::twistor_j_normalized(d) : qh::jfun::twistor_j_raw(d);
      ordered alpha = ordered::array(), chi_part = ordered::array();
      for (const Rational& c : j.alpha) alpha.push_back(jnum(c));
      for (const Rational& c : j.chi) chi_part.push_back(jnum(c));
      o["alpha"] = std::move(alpha);
      o["chi"] = std::move(chi_part);
    } else {
      const std::vector<Rational> v = normalized != 0 ? qh::jfun::cpn_j_normalized(sp.N, d)
                                                      : qh::jfun::cpn_j_raw(sp.N, d);
      ordered coeffs = ordered::array();
      for (const Rational& c : v) coeffs.push_back(jnum(c));
      o["coefficients"] = std::move(coeffs);
    }
    return o.dump(2);
  });
}

qh_status qh_gamma_report(qh_session* s, const char* space, long n,
                          const char* tolerance, int richardson, char** out_json) {
  return guard(s, out_json, [&] {
    const qh::Space sp = parse_space(space);
    if (n < 2) throw std::invalid_argument("n: cutoff must be >= 2");
    qh::gammalimit::LimitReport report;
    if (sp.id == qh::SpaceId::Twistor) {
      const Rational scale =
          tolerance != nullptr && *tolerance != '\0' ? parse_number(tolerance, "tolerance") : Rational(10);
      std::vector<long> schedule;
      if (richardson != 0) schedule.push_back(n / 2);
      schedule.push_back(n);
      report = qh::gammalimit::limit_report_twistor(schedule, scale, richardson != 0);
    } else {
      if (richardson != 0)
        throw std::invalid_argument("richardson: only supported for space 'twistor'");
      const Rational tol = tolerance != nullptr && *tolerance != '\0'
                               ? parse_number(tolerance, "tolerance")
                               : Rational(1, 1000);
      report = qh::gammalimit::limit_report_cpn(sp.N, n, BigReal::of(tol));
    }
    ordered o;
    o["schema"] = "qh-gamma/1";
    o["space"] = space_name(sp);
    o["n"] = n;
    o["richardson"] = richardson != 0;
    ordered rows = ordered::array();
    for (const auto& row : report.rows) rows.push_back(jrow(row));
    o["rows"] = std::move(rows);
    o["all_pass"] = report.all_pass;
    return o.dump(2);
  });
}

qh_status qh_peaks_scan(qh_session* s, const char* alphas, const char* a,
                        const char* betas, const char* b, const char* xs,
                        const char* nu, long k, const char* bseq, int fit,
                        char** out_json) {
  return guard(s, out_json, [&] {
    const auto alpha_v = parse_number_csv(alphas, "alphas");
    const auto a_v = parse_number_csv(a, "a");
    const auto beta_v = parse_number_csv(betas, "betas");
    const auto b_v = parse_number_csv(b, "b");
    const qh::peaks::PeakSeriesParams p = qh::peaks::series_params(alpha_v, a_v, beta_v, b_v);
    const Rational nu_v =
        nu != nullptr && *nu != '\0' ? parse_number(nu, "nu") : Rational(2, 5);
    const std::string seq_name = bseq != nullptr && *bseq != '\0' ? bseq : "harmonic";
    const qh::peaks::ScalingSequence seq = qh::peaks::ScalingSequence::by_name(seq_name);
    std::vector<BigReal> points;
    for (const std::string& piece : split_csv(require(xs, "x")))
      points.push_back(BigReal::parse(piece));

    ordered o;
    o["schema"] = "qh-peaks/1";
    ordered params;
    const auto jlist = [](const std::vector<Rational>& v) {
      ordered arr = ordered::array();
      for (const Rational& r : v) arr.push_back(r.str());
      return arr;
    };
    params["alphas"] = jlist(alpha_v);
    params["a"] = jlist(a_v);
    params["betas"] = jlist(beta_v);
    params["b"] = jlist(b_v);
    params["kappa"] = jnum(p.kappa);
    params["theta"] = jnum(p.theta);
    params["h"] = jnum(p.h);
    o["params"] = std::move(params);
    o["nu"] = jnum(nu_v);
    o["k"] = k;
    o["bseq"] = seq_name;

    std::vector<BigReal> fit_x, fit_r;
    ordered rows = ordered::array();
    for (const BigReal& x : points) {
      const qh::peaks::TailReport tr = qh::peaks::tail_report(p, x, nu_v);
      ordered row;
      row["x"] = jnum(x);
      row["head"] = jnum(tr.head_ratio);
      row["tail"] = jnum(tr.tail_ratio);
      row["defect"] = jnum(qh::peaks::peaking_defect(p, x, seq, k));
      try {
        row["stokes"] = jnum(qh::peaks::stokes_ratio(p, x));
      } catch (const qh::UnsupportedError&) {
        row["stokes"] = nullptr;
      }
      rows.push_back(std::move(row));
      fit_x.push_back(x);
      fit_r.push_back(tr.tail_ratio);
    }
    o["rows"] = std::move(rows);
    if (fit != 0) {
      const auto [A, B] = qh::peaks::fit_decay(fit_x, fit_r);
      ordered f;
      f["model"] = "tail ~ exp(-A*x^B)";
      f["A"] = jnum(A);
      f["B"] = jnum(B);
      o["fit"] = std::move(f);
    }
    return o.dump(2);
  });
}

qh_status qh_dmod_report(qh_session* s, const char* space, const char* block,
                         const char* q, const char* chi, char** out_json) {
  return guard(s, out_json, [&] {
    const qh::Space sp = parse_space(space);
    const Rational qv = parse_number(q != nullptr && *q != '\0' ? q : "1", "q");
    const Rational chiv = parse_number(chi != nullptr && *chi != '\0' ? chi : "-1", "chi");
    std::string block_name = block != nullptr && *block != '\0'
                                 ? block
                                 : (sp.id == qh::SpaceId::Twistor ? "main" : "full");
    qh::dmod::FormalConnection conn;
    if (sp.id == qh::SpaceId::Twistor) {
      if (block_name == "y")
        conn = qh::dmod::y_block_connection(qv);
      else if (block_name == "main")
        conn = qh::dmod::quantum_connection(sp, qv, chiv);
      else
        throw std::invalid_argument("block: expected 'main' or 'y' for space 'twistor'");
    } else {
      if (block_name != "full")
        throw std::invalid_argument("block: only 'full' applies to space 'cpn:N'");
      conn = qh::dmod::quantum_connection(sp, qv, chiv);
    }
    const qh::dmod::ExpTypeReport rep = qh::dmod::exp_type_report(conn);
    ordered o;
    o["schema"] = "qh-dmod/1";
    o["space"] = space_name(sp);
    o["block"] = block_name;
    o["q"] = jnum(qv);
    if (sp.id != qh::SpaceId::Twistor || block_name == "main") o["chi"] = jnum(chiv);
    o["label"] = rep.label;
    o["pole_order"] = rep.pole;
    o["dimension"] = rep.dimension;
    o["untwisted_irregularity"] = rep.untwisted_irr;
    ordered evs = ordered::array();
    for (const auto& ev : rep.eigenvalues) {
      ordered e;
      e["value"] = jnum(ev.value);
      e["multiplicity"] = ev.multiplicity;
      e["twisted_irregularity"] = ev.twisted_irr;
      e["expected"] = ev.expected;
      e["shifted_leading_invertible"] = ev.shifted_leading_invertible;
      evs.push_back(std::move(e));
    }
    o["eigenvalues"] = std::move(evs);
    o["exponential_type"] = rep.exponential_type;
    o["verdict"] = rep.verdict;
    return o.dump(2);
  });
}

qh_status qh_dmod_irregularity(qh_session* s, const char* op, char** out_json) {
  return guard(s, out_json, [&] {
    const qh::dmod::DiffOperator L = qh::dmod::parse_operator(require(op, "operator"));
    ordered o;
    o["schema"] = "qh-dmod-irr/1";
    o["operator"] = qh::dmod::operator_str(L);
    o["order"] = L.order;
    o["irregularity"] = qh::dmod::irregularity(L);
    return o.dump(2);
  });
}

qh_status qh_verify_criterion(qh_session* s, int index, char** out_json) {
  return guard(s, out_json, [&] {
    std::vector<qh::verify::CriterionReport> reports;
    reports.push_back(qh::verify::run_criterion(index));
    return qh::verify::report_json(reports);
  });
}

qh_status qh_verify_all(qh_session* s, int projective, int twistor,
                        int* all_pass, char** out_json) {
  return guard(s, out_json, [&] {
    if (projective == 0 && twistor == 0)
      throw std::invalid_argument("space: select at least one of the two space families");
    qh::verify::Options opt;
    opt.projective = projective != 0;
    opt.twistor = twistor != 0;
    const auto reports = qh::verify::run_all(opt);
    bool all = true;
    for (const auto& rep : reports) all = all && rep.pass;
    if (all_pass != nullptr) *all_pass = all ? 1 : 0;
    return qh::verify::report_json(reports);
  });
}

} // extern "C"
