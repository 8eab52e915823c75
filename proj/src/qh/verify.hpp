#pragma once
// Composite release checks: nine numbered criteria, each expanding into a
// list of pass/fail rows with measured values.  The same runner backs the
// acceptance binary, the command-line `verify-all`, and the C API, so the
// tolerances live here, in one place, as code literals.
//
// Rows with `gated == false` are informational (extrapolation diagnostics);
// they never affect the criterion verdict.

#include <string>
#include <vector>

namespace qh::verify {

struct CheckRow {
  std::string id;      // stable identifier, e.g. "apery/R4:a*x"
  std::string detail;  // measurement vs bound, human-readable
  bool pass = false;
  bool gated = true;   // informational rows don't affect the criterion
};

struct CriterionReport {
  int index = 0;       // 1..9
  std::string name;
  std::vector<CheckRow> rows;
  bool pass = true;    // AND over gated rows
  double seconds = 0.0;
};

struct Options {
  bool projective = true;  // run the projective-space criteria (3, 6)
  bool twistor = true;     // run the 8-dimensional-model criteria
};

// Number of defined criteria (indices 1..count).
int criterion_count();

// Human-readable name of one criterion.
std::string criterion_name(int index);

// True when the criterion applies under the given space selection.
bool criterion_selected(int index, const Options& opt);

// Run one criterion (throws std::invalid_argument for an unknown index).
CriterionReport run_criterion(int index, const Options& opt = {});

// Run every selected criterion in order.
std::vector<CriterionReport> run_all(const Options& opt = {});

// Deterministic JSON rendering (no timing fields, byte-identical for a
// fixed config and seed).
std::string report_json(const std::vector<CriterionReport>& reports);

} // namespace qh::verify
