#pragma once

// Global run configuration: decimal working precision for floating-point
// evaluation, the exact/floating crossover for nested-sum sweeps, the default
// window exponent for series tail scans, and the seed used by randomized
// search (cyclic-vector candidates, basis-change sampling).
//
// Invariants enforced by set():
//   precision_digits >= 20
//   exact_crossover  <= 5000
//   window_exponent  in (0, 1/2]

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qh {

struct RunConfig {
  int precision_digits = 50;   // significant decimal digits for BigReal
  long exact_crossover = 2000; // nested sums use exact rationals up to here
  double window_exponent = 0.4;
  std::uint64_t seed = 12345;
  int workers = 1; // reserved; evaluation is deterministic regardless

  void validate() const;
};

// Process-wide active configuration.  Reads are cheap; set() validates.
const RunConfig& config();
void set_config(const RunConfig& cfg);

// Number of mantissa bits needed for `digits` significant decimal digits,
// plus a fixed guard margin.
long bits_for_digits(int digits);

} // namespace qh
