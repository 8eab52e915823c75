// qgamma — command-line front end over the C API (libqh).
//
// Exit codes: 0 success, 1 failed check or evaluation error, 2 usage error.
// All reports are deterministic JSON on stdout (exact rationals as "p/q",
// floating-point values with an explicit precision field); `peaks scan`
// prints CSV instead.  Errors go to stderr and name the offending flag.

#include <cstdio>
#include <functional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>
#include <qh/qh_c.h>

namespace {

using json = nlohmann::json;

const char* c_or_null(const std::string& s) { return s.empty() ? nullptr : s.c_str(); }

// Print a finished JSON document, or the session error; map status to exit code.
int finish(qh_session* s, qh_status st, char* out) {
  if (st == QH_OK) {
    if (out != nullptr) {
      std::fputs(out, stdout);
      std::fputc('\n', stdout);
      qh_string_free(out);
    }
    return 0;
  }
  std::fprintf(stderr, "qgamma: %s\n", qh_last_error(s));
  return st == QH_E_USAGE ? 2 : 1;
}

std::string csv_number(const json& v) {
  if (v.is_null()) return "";
  if (v.is_object()) return v["value"].get<std::string>();
  return v.get<std::string>();
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact quantum-cohomology toolkit: ring models, nested harmonic\n"
               "sums, J-series coefficients, limit verdicts, series peak scans,\n"
               "and formal-connection classification"};
  app.set_version_flag("--version", qh_version());
  app.require_subcommand(1);
  app.fallthrough();

  // Global numeric configuration (applied before any subcommand runs).
  int precision = 0;
  long crossover = 0;
  std::string nu_global;
  unsigned long long seed = 0;
  int workers = 0;
  app.add_option("--precision", precision, "working precision in decimal digits");
  app.add_option("--crossover", crossover, "largest cutoff evaluated in exact arithmetic");
  app.add_option("--nu", nu_global, "default window exponent in (0, 1/2], exact number");
  app.add_option("--seed", seed, "seed for randomized search candidates");
  app.add_option("--workers", workers, "reserved; results do not depend on it");

  std::function<int(qh_session*)> action;

  // --- qh dump -------------------------------------------------------------
  auto* cmd_qh = app.add_subcommand("qh", "ring-model queries");
  cmd_qh->fallthrough();
  {
    auto* dump = cmd_qh->add_subcommand("dump", "basis, Chern character, and the\n"
                                                "first-Chern-class multiplication matrix");
    dump->fallthrough();
    auto space = std::make_shared<std::string>();
    auto q = std::make_shared<std::string>();
    auto chi = std::make_shared<std::string>();
    dump->add_option("--space", *space, "'twistor' or 'cpn:N'")->required();
    dump->add_option("--q", *q, "exact quantum parameter (default 1)");
    dump->add_option("--chi", *chi, "exact Euler-characteristic parameter (default -1)");
    dump->callback([&action, space, q, chi] {
      action = [space, q, chi](qh_session* s) {
        char* out = nullptr;
        const qh_status st =
            qh_space_dump(s, space->c_str(), c_or_null(*q), c_or_null(*chi), &out);
        return finish(s, st, out);
      };
    });
  }

  // --- mzv eval / expand ---------------------------------------------------
  auto* cmd_mzv = app.add_subcommand("mzv", "nested harmonic sums");
  cmd_mzv->fallthrough();
  {
    auto* eval = cmd_mzv->add_subcommand("eval", "evaluate one sum at a cutoff");
    eval->fallthrough();
    auto index = std::make_shared<std::string>();
    auto d = std::make_shared<long>(0);
    auto weak = std::make_shared<bool>(false);
    eval->add_option("--index", *index, "comma-separated exponents, e.g. 2,1")->required();
    eval->add_option("--d", *d, "summation cutoff")->required();
    eval->add_flag("--weak", *weak, "weak (>=) nesting instead of strict (>)");
    eval->callback([&action, index, d, weak] {
      action = [index, d, weak](qh_session* s) {
        char* out = nullptr;
        const qh_status st = qh_mzv_eval(s, index->c_str(), *d, *weak ? 1 : 0, &out);
        return finish(s, st, out);
      };
    });

    auto* expand = cmd_mzv->add_subcommand("expand", "write a weak sum as strict sums");
    expand->fallthrough();
    auto sym = std::make_shared<std::string>();
    expand->add_option("--sym", *sym, "comma-separated exponents of the weak sum")->required();
    expand->callback([&action, sym] {
      action = [sym](qh_session* s) {
        char* out = nullptr;
        const qh_status st = qh_mzv_expand(s, sym->c_str(), &out);
        return finish(s, st, out);
      };
    });
  }

  // --- jfun coeff ------------------------------------------------------------
  auto* cmd_jfun = app.add_subcommand("jfun", "J-series coefficients");
  cmd_jfun->fallthrough();
  {
    auto* coeff = cmd_jfun->add_subcommand("coeff", "one degree-d coefficient");
    coeff->fallthrough();
    auto space = std::make_shared<std::string>();
    auto d = std::make_shared<long>(0);
    auto normalized = std::make_shared<bool>(false);
    coeff->add_option("--space", *space, "'twistor' or 'cpn:N'")->required();
    coeff->add_option("--d", *d, "degree / cutoff")->required();
    coeff->add_flag("--normalized", *normalized, "rescale by (d!)^2");
    coeff->callback([&action, space, d, normalized] {
      action = [space, d, normalized](qh_session* s) {
        char* out = nullptr;
        const qh_status st = qh_j_coefficient(s, space->c_str(), *d, *normalized ? 1 : 0, &out);
        return finish(s, st, out);
      };
    });
  }

  // --- gamma verify ----------------------------------------------------------
  auto* cmd_gamma = app.add_subcommand("gamma", "coefficient-limit verdicts");
  cmd_gamma->fallthrough();
  {
    auto* verify = cmd_gamma->add_subcommand("verify", "measured limits vs targets");
    verify->fallthrough();
    auto space = std::make_shared<std::string>();
    auto n = std::make_shared<long>(0);
    auto tol_scale = std::make_shared<std::string>();
    auto tol_flat = std::make_shared<std::string>();
    auto richardson = std::make_shared<bool>(false);
    verify->add_option("--space", *space, "'twistor' or 'cpn:N'")->required();
    verify->add_option("--n", *n, "cutoff")->required();
    verify->add_option("--tolerance-scale", *tol_scale,
                       "scale on the per-row decay bounds (twistor, default 10)");
    verify->add_option("--tolerance", *tol_flat,
                       "flat per-coefficient bound (cpn:N, default 1/1000)");
    verify->add_flag("--richardson", *richardson, "one 1/n elimination step (twistor)");
    verify->callback([&action, space, n, tol_scale, tol_flat, richardson] {
      action = [space, n, tol_scale, tol_flat, richardson](qh_session* s) {
        if (!tol_scale->empty() && !tol_flat->empty()) {
          std::fprintf(stderr,
                       "qgamma: --tolerance-scale and --tolerance are mutually exclusive\n");
          return 2;
        }
        const std::string& tol = tol_scale->empty() ? *tol_flat : *tol_scale;
        char* out = nullptr;
        const qh_status st =
            qh_gamma_report(s, space->c_str(), *n, c_or_null(tol), *richardson ? 1 : 0, &out);
        return finish(s, st, out);
      };
    });
  }

  // --- peaks scan ------------------------------------------------------------
  auto* cmd_peaks = app.add_subcommand("peaks", "series peak analysis");
  cmd_peaks->fallthrough();
  {
    auto* scan = cmd_peaks->add_subcommand(
        "scan", "head/tail mass, peaking defect, and saddle ratio (CSV)");
    scan->fallthrough();
    auto alphas = std::make_shared<std::string>();
    auto a = std::make_shared<std::string>();
    auto betas = std::make_shared<std::string>();
    auto b = std::make_shared<std::string>();
    auto xs = std::make_shared<std::string>();
    auto nu = std::make_shared<std::string>();
    auto k = std::make_shared<long>(1);
    auto bseq = std::make_shared<std::string>("harmonic");
    auto fit = std::make_shared<bool>(false);
    scan->add_option("--alphas", *alphas, "numerator weights, comma-separated");
    scan->add_option("--a", *a, "numerator offsets, comma-separated");
    scan->add_option("--betas", *betas, "denominator weights, comma-separated")->required();
    scan->add_option("--b", *b, "denominator offsets, comma-separated")->required();
    scan->add_option("--x", *xs, "evaluation points, comma-separated")->required();
    scan->add_option("--nu", *nu, "window exponent in (0, 1/2] (default 2/5)");
    scan->add_option("--k", *k, "terms of the scaling sequence in the defect");
    scan->add_option("--bseq", *bseq, "const1 | harmonic | symsum | log1p_pow");
    scan->add_flag("--fit", *fit, "append an exp(-A*x^B) fit of the tail ratios");
    scan->callback([&action, alphas, a, betas, b, xs, nu, k, bseq, fit, &nu_global] {
      action = [alphas, a, betas, b, xs, nu, k, bseq, fit, &nu_global](qh_session* s) {
        const std::string& nu_eff = nu->empty() ? nu_global : *nu;
        char* out = nullptr;
        const qh_status st =
            qh_peaks_scan(s, c_or_null(*alphas), c_or_null(*a), betas->c_str(), b->c_str(),
                          xs->c_str(), c_or_null(nu_eff), *k, bseq->c_str(), *fit ? 1 : 0, &out);
        if (st != QH_OK) return finish(s, st, out);
        const json doc = json::parse(out);
        qh_string_free(out);
        std::fputs("x,head,tail,defect,stokes\n", stdout);
        for (const auto& row : doc["rows"])
          std::fprintf(stdout, "%s,%s,%s,%s,%s\n", csv_number(row["x"]).c_str(),
                       csv_number(row["head"]).c_str(), csv_number(row["tail"]).c_str(),
                       csv_number(row["defect"]).c_str(), csv_number(row["stokes"]).c_str());
        if (doc.contains("fit"))
          std::fprintf(stdout, "# fit: tail ~ exp(-A*x^B), A=%s, B=%s\n",
                       csv_number(doc["fit"]["A"]).c_str(), csv_number(doc["fit"]["B"]).c_str());
        return 0;
      };
    });
  }

  // --- dmod report / irr -------------------------------------------------------
  auto* cmd_dmod = app.add_subcommand("dmod", "formal-connection classification");
  cmd_dmod->fallthrough();
  {
    auto* report = cmd_dmod->add_subcommand("report", "pole order, leading eigenvalues,\n"
                                                      "irregularity, and the type verdict");
    report->fallthrough();
    auto space = std::make_shared<std::string>();
    auto block = std::make_shared<std::string>();
    auto q = std::make_shared<std::string>();
    auto chi = std::make_shared<std::string>();
    report->add_option("--space", *space, "'twistor' or 'cpn:N'")->required();
    report->add_option("--block", *block, "twistor: 'main' (default) or 'y'");
    report->add_option("--q", *q, "exact quantum parameter (default 1)");
    report->add_option("--chi", *chi, "exact Euler-characteristic parameter (default -1)");
    report->callback([&action, space, block, q, chi] {
      action = [space, block, q, chi](qh_session* s) {
        char* out = nullptr;
        const qh_status st = qh_dmod_report(s, space->c_str(), c_or_null(*block),
                                            c_or_null(*q), c_or_null(*chi), &out);
        return finish(s, st, out);
      };
    });

    auto* irr = cmd_dmod->add_subcommand("irr", "irregularity of one operator");
    irr->fallthrough();
    auto op = std::make_shared<std::string>();
    irr->add_option("--operator", *op,
                    "semicolon-separated 'd<k>:<rational function in u>' terms")
        ->required();
    irr->callback([&action, op] {
      action = [op](qh_session* s) {
        char* out = nullptr;
        const qh_status st = qh_dmod_irregularity(s, op->c_str(), &out);
        return finish(s, st, out);
      };
    });
  }

  // --- verify-all ---------------------------------------------------------------
  {
    auto* verify_all = app.add_subcommand(
        "verify-all", "run the numbered release criteria; exit 1 if any fails");
    verify_all->fallthrough();
    auto which = std::make_shared<std::string>("all");
    auto criterion = std::make_shared<int>(0);
    verify_all->add_option("--space", *which, "all | twistor | cpn (default all)");
    verify_all->add_option("--criterion", *criterion, "run a single criterion 1..9");
    verify_all->callback([&action, which, criterion] {
      action = [which, criterion](qh_session* s) {
        char* out = nullptr;
        if (*criterion != 0) {
          const qh_status st = qh_verify_criterion(s, *criterion, &out);
          if (st != QH_OK) return finish(s, st, out);
          const bool pass = json::parse(out)["all_pass"].get<bool>();
          const int rc = finish(s, st, out);
          return rc != 0 ? rc : (pass ? 0 : 1);
        }
        int projective = 1, twistor = 1;
        if (*which == "twistor") projective = 0;
        else if (*which == "cpn") twistor = 0;
        else if (*which != "all") {
          std::fprintf(stderr, "qgamma: --space must be all, twistor, or cpn\n");
          return 2;
        }
        int all_pass = 0;
        const qh_status st = qh_verify_all(s, projective, twistor, &all_pass, &out);
        if (st != QH_OK) return finish(s, st, out);
        const int rc = finish(s, st, out);
        return rc != 0 ? rc : (all_pass != 0 ? 0 : 1);
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (!action) {
    std::fprintf(stderr, "qgamma: missing subcommand (try --help)\n");
    return 2;
  }

  qh_session* s = qh_session_new();
  if (s == nullptr) {
    std::fprintf(stderr, "qgamma: out of memory\n");
    return 1;
  }
  int rc;
  double nu_cfg = 0.0;
  if (!nu_global.empty()) {
    try {
      std::size_t used = 0;
      nu_cfg = std::stod(nu_global, &used);
      if (used != nu_global.size() && nu_global.find('/') == std::string::npos)
        throw std::invalid_argument("nu");
      if (nu_global.find('/') != std::string::npos) {
        const std::size_t slash = nu_global.find('/');
        nu_cfg = std::stod(nu_global.substr(0, slash)) / std::stod(nu_global.substr(slash + 1));
      }
    } catch (const std::exception&) {
      std::fprintf(stderr, "qgamma: --nu: cannot parse number '%s'\n", nu_global.c_str());
      qh_session_free(s);
      return 2;
    }
  }
  if (qh_configure(s, precision, crossover, nu_cfg, seed, workers) != QH_OK) {
    std::fprintf(stderr, "qgamma: %s\n", qh_last_error(s));
    rc = 2;
  } else {
    rc = action(s);
  }
  qh_session_free(s);
  return rc;
}
