// Exercises the C interface end to end: status codes, error messages, JSON
// shapes, determinism, and a sample of known values through each entry point.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include <json.hpp>
#include <qh/qh_c.h>

namespace {

using json = nlohmann::json;

struct Session {
  qh_session* s = qh_session_new();
  Session() { REQUIRE(s != nullptr); }
  ~Session() { qh_session_free(s); }
  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;
};

std::string take(char* p) {
  std::string out = p != nullptr ? p : "";
  qh_string_free(p);
  return out;
}

} // namespace

TEST_CASE("version and session lifecycle") {
  CHECK(std::string(qh_version()) == "1.0.0");
  Session ses;
  CHECK(std::string(qh_last_error(ses.s)).empty());
  CHECK(qh_last_error(nullptr) == std::string());
  char* out = nullptr;
  CHECK(qh_mzv_eval(nullptr, "2,1", 5, 0, &out) == QH_E_USAGE);
  CHECK(out == nullptr);
  qh_string_free(nullptr); // must be a no-op
}

TEST_CASE("mzv evaluation and expansion") {
  Session ses;
  char* out = nullptr;

  REQUIRE(qh_mzv_eval(ses.s, "2,1", 2, 1, &out) == QH_OK);
  json weak = json::parse(take(out));
  CHECK(weak["kind"] == "weak");
  CHECK(weak["exact"] == "11/8");
  CHECK(weak["value"]["precision_bits"].get<long>() > 0);

  REQUIRE(qh_mzv_eval(ses.s, "2,1", 2, 0, &out) == QH_OK);
  json strict = json::parse(take(out));
  CHECK(strict["exact"] == "1/4");

  // Large cutoffs skip the exact field but still evaluate.
  REQUIRE(qh_mzv_eval(ses.s, "3", 1000, 0, &out) == QH_OK);
  json big = json::parse(take(out));
  CHECK(!big.contains("exact"));
  CHECK(big["value"]["value"].get<std::string>().substr(0, 7) == "1.20205");

  REQUIRE(qh_mzv_expand(ses.s, "2,1", &out) == QH_OK);
  json exp = json::parse(take(out));
  REQUIRE(exp["strict_terms"].size() == 2);
  CHECK(exp["strict_terms"][0]["index"] == json::array({2, 1}));
  CHECK(exp["strict_terms"][0]["coeff"] == "1");
  CHECK(exp["strict_terms"][1]["index"] == json::array({3}));
  CHECK(exp["strict_terms"][1]["coeff"] == "1");

  CHECK(qh_mzv_eval(ses.s, "2,x", 5, 0, &out) == QH_E_USAGE);
  CHECK(std::string(qh_last_error(ses.s)).find("index") != std::string::npos);
  CHECK(qh_mzv_eval(ses.s, "2,1", -1, 0, &out) == QH_E_USAGE);
  CHECK(qh_mzv_eval(ses.s, "", 5, 0, &out) == QH_E_USAGE);
}

TEST_CASE("j coefficients") {
  Session ses;
  char* out = nullptr;

  REQUIRE(qh_j_coefficient(ses.s, "twistor", 1, 1, &out) == QH_OK);
  json tw = json::parse(take(out));
  CHECK(tw["alpha"] == json::array({"1", "-1", "1", "-1"}));
  CHECK(tw["chi"] == json::array({"-1", "-5", "5/2", "0"}));

  REQUIRE(qh_j_coefficient(ses.s, "cpn:2", 1, 1, &out) == QH_OK);
  json cp = json::parse(take(out));
  CHECK(cp["coefficients"] == json::array({"1", "-3", "6"}));

  // Raw and normalized agree at d = 1 (the rescale factor is 1).
  REQUIRE(qh_j_coefficient(ses.s, "twistor", 1, 0, &out) == QH_OK);
  json raw = json::parse(take(out));
  CHECK(raw["alpha"] == tw["alpha"]);
  CHECK(raw["chi"] == tw["chi"]);

  CHECK(qh_j_coefficient(ses.s, "plane", 1, 0, &out) == QH_E_USAGE);
  CHECK(std::string(qh_last_error(ses.s)).find("space") != std::string::npos);
}

TEST_CASE("space dump") {
  Session ses;
  char* out = nullptr;

  REQUIRE(qh_space_dump(ses.s, "twistor", nullptr, nullptr, &out) == QH_OK);
  json tw = json::parse(take(out));
  CHECK(tw["rank"] == 8);
  CHECK(tw["fano_index"] == 2);
  CHECK(tw["basis"][4] == "x");
  CHECK(tw["q"] == "1");
  CHECK(tw["chi"] == "-1");
  // (value^2 - 4q)^4 expanded, ascending coefficients.
  CHECK(tw["charpoly_ascending"] ==
        json::array({"256", "0", "-256", "0", "96", "0", "-16", "0", "1"}));
  CHECK(tw["c1_matrix"][1][0] == "1");
  CHECK(tw["c1_matrix"][0][1] == "4");

  REQUIRE(qh_space_dump(ses.s, "cpn:3", "2", nullptr, &out) == QH_OK);
  json cp = json::parse(take(out));
  CHECK(cp["rank"] == 4);
  CHECK(cp["fano_index"] == 4);
  CHECK(cp["q"] == "2");

  CHECK(qh_space_dump(ses.s, "cpn:0", nullptr, nullptr, &out) == QH_E_USAGE);
  CHECK(qh_space_dump(ses.s, "twistor", "1/0", nullptr, &out) == QH_E_USAGE);
  CHECK(std::string(qh_last_error(ses.s)).find("q") != std::string::npos);
}

TEST_CASE("gamma reports are deterministic and validate flags") {
  Session ses;
  char* out = nullptr;

  REQUIRE(qh_gamma_report(ses.s, "cpn:2", 100, nullptr, 0, &out) == QH_OK);
  const std::string first = take(out);
  REQUIRE(qh_gamma_report(ses.s, "cpn:2", 100, nullptr, 0, &out) == QH_OK);
  CHECK(first == take(out)); // byte-identical under a fixed configuration
  json cp = json::parse(first);
  REQUIRE(cp["rows"].size() == 3);
  CHECK(cp["rows"][0]["coefficient"] == "R0:1");
  CHECK(cp["rows"][0].contains("estimate"));
  CHECK(cp["rows"][0].contains("deviation"));
  CHECK(cp["rows"][0]["pass"].is_boolean());

  REQUIRE(qh_gamma_report(ses.s, "twistor", 1000, nullptr, 1, &out) == QH_OK);
  json tw = json::parse(take(out));
  REQUIRE(tw["rows"].size() == 7);
  CHECK(tw["rows"][0]["coefficient"] == "R1:a");
  CHECK(tw["richardson"] == true);

  CHECK(qh_gamma_report(ses.s, "cpn:2", 100, nullptr, 1, &out) == QH_E_USAGE);
  CHECK(std::string(qh_last_error(ses.s)).find("richardson") != std::string::npos);
  CHECK(qh_gamma_report(ses.s, "twistor", 1, nullptr, 0, &out) == QH_E_USAGE);
}

TEST_CASE("peaks scan") {
  Session ses;
  char* out = nullptr;

  REQUIRE(qh_peaks_scan(ses.s, nullptr, nullptr, "1,1", "1,1", "100,1000", "0.4", 1,
                        "harmonic", 1, &out) == QH_OK);
  json scan = json::parse(take(out));
  CHECK(scan["params"]["kappa"] == "2");
  CHECK(scan["params"]["h"]["value"] == "1e0");
  CHECK(scan["nu"] == "2/5");
  REQUIRE(scan["rows"].size() == 2);
  for (const auto& row : scan["rows"]) {
    CHECK(row["head"]["value"].is_string());
    CHECK(row["tail"]["value"].is_string());
    CHECK(row["defect"]["value"].is_string());
    CHECK(!row["stokes"].is_null()); // weights are all 1 here
  }
  CHECK(scan["fit"]["model"] == "tail ~ exp(-A*x^B)");

  CHECK(qh_peaks_scan(ses.s, nullptr, nullptr, "1,1", "1,1", "100", "0.4", 1, "bogus", 0,
                      &out) == QH_E_USAGE);
  CHECK(std::string(qh_last_error(ses.s)).find("sequence") != std::string::npos);
  // kappa = 0 is outside the peak regime.
  CHECK(qh_peaks_scan(ses.s, "1", "1", "1", "1", "100", "0.4", 1, "harmonic", 0, &out) ==
        QH_E_DOMAIN);
}

TEST_CASE("dmod report and irregularity") {
  Session ses;
  char* out = nullptr;

  REQUIRE(qh_dmod_report(ses.s, "twistor", "y", "1", nullptr, &out) == QH_OK);
  json rep = json::parse(take(out));
  CHECK(rep["pole_order"] == 2);
  CHECK(rep["dimension"] == 4);
  CHECK(rep["untwisted_irregularity"] == 4);
  REQUIRE(rep["eigenvalues"].size() == 2);
  CHECK(rep["eigenvalues"][0]["value"] == "-2");
  CHECK(rep["eigenvalues"][0]["multiplicity"] == 2);
  CHECK(rep["eigenvalues"][0]["twisted_irregularity"] == 2);
  CHECK(rep["eigenvalues"][1]["value"] == "2");
  CHECK(rep["verdict"] == "unramified exponential type");
  CHECK(rep["exponential_type"] == true);

  REQUIRE(qh_dmod_irregularity(
              ses.s, "d4:1; d2:-8/u^2; d1:16/u^2; d0:16/u^4-16/u^2", &out) == QH_OK);
  json irr = json::parse(take(out));
  CHECK(irr["order"] == 4);
  CHECK(irr["irregularity"] == 4);
  CHECK(irr["operator"] == "d4:1; d2:-8/u^2; d1:16/u^2; d0:-16/u^2 + 16/u^4");

  CHECK(qh_dmod_report(ses.s, "twistor", "z", "1", nullptr, &out) == QH_E_USAGE);
  CHECK(std::string(qh_last_error(ses.s)).find("block") != std::string::npos);
  CHECK(qh_dmod_irregularity(ses.s, "d0:1", &out) == QH_E_USAGE);
  CHECK(qh_dmod_irregularity(ses.s, "", &out) == QH_E_USAGE);
}

TEST_CASE("verify criterion entry point") {
  Session ses;
  char* out = nullptr;

  REQUIRE(qh_verify_criterion(ses.s, 9, &out) == QH_OK);
  json rep = json::parse(take(out));
  CHECK(rep["schema"] == "qh-verify/1");
  REQUIRE(rep["criteria"].size() == 1);
  CHECK(rep["criteria"][0]["index"] == 9);
  CHECK(rep["criteria"][0]["name"] == "structural-tables");
  CHECK(rep["criteria"][0]["pass"] == true);
  CHECK(rep["criteria"][0]["rows"].size() == 3);
  CHECK(rep["all_pass"] == true);

  CHECK(qh_verify_criterion(ses.s, 0, &out) == QH_E_USAGE);
  CHECK(qh_verify_criterion(ses.s, 10, &out) == QH_E_USAGE);

  int all = -1;
  CHECK(qh_verify_all(ses.s, 0, 0, &all, &out) == QH_E_USAGE);
}

TEST_CASE("configure adjusts working precision") {
  Session ses;
  char* out = nullptr;

  REQUIRE(qh_mzv_eval(ses.s, "2", 10, 0, &out) == QH_OK);
  const long bits_default = json::parse(take(out))["value"]["precision_bits"].get<long>();

  REQUIRE(qh_configure(ses.s, 30, 0, 0.0, 0, 0) == QH_OK);
  REQUIRE(qh_mzv_eval(ses.s, "2", 10, 0, &out) == QH_OK);
  const long bits_small = json::parse(take(out))["value"]["precision_bits"].get<long>();
  CHECK(bits_small < bits_default);

  REQUIRE(qh_configure(ses.s, 50, 0, 0.0, 0, 0) == QH_OK);
  REQUIRE(qh_mzv_eval(ses.s, "2", 10, 0, &out) == QH_OK);
  CHECK(json::parse(take(out))["value"]["precision_bits"].get<long>() == bits_default);

  CHECK(qh_configure(ses.s, -5, 0, 0.0, 0, 0) == QH_OK); // <= 0 keeps the old value
}
