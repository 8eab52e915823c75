#include "qh/config.hpp"

#include <cmath>
#include <cstdlib>

namespace qh {

namespace {

RunConfig g_config_from_env() {
  RunConfig cfg;
  if (const char* p = std::getenv("QH_PRECISION")) {
    char* end = nullptr;
    long v = std::strtol(p, &end, 10);
    if (end && *end == '\0' && v >= 20 && v <= 100000) cfg.precision_digits = static_cast<int>(v);
  }
  if (const char* s = std::getenv("QH_SEED")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end && *end == '\0') cfg.seed = v;
  }
  return cfg;
}

RunConfig& g_config() {
  static RunConfig cfg = g_config_from_env();
  return cfg;
}

} // namespace

void RunConfig::validate() const {
  if (precision_digits < 20)
    throw std::invalid_argument("RunConfig: precision_digits must be >= 20");
  if (exact_crossover < 0 || exact_crossover > 5000)
    throw std::invalid_argument("RunConfig: exact_crossover must lie in [0, 5000]");
  if (!(window_exponent > 0.0) || window_exponent > 0.5)
    throw std::invalid_argument("RunConfig: window_exponent must lie in (0, 1/2]");
  if (workers < 1)
    throw std::invalid_argument("RunConfig: workers must be >= 1");
}

const RunConfig& config() { return g_config(); }

void set_config(const RunConfig& cfg) {
  cfg.validate();
  g_config() = cfg;
}

long bits_for_digits(int digits) {
  // ceil(digits * log2(10)) plus a 32-bit guard band.
  return static_cast<long>(std::ceil(digits * 3.3219280948873623)) + 32;
}

} // namespace qh
