#pragma once

// Error taxonomy shared across the library.  The C API maps these to status
// codes: std::invalid_argument -> usage, std::domain_error -> domain,
// SingularMatrix -> singular, UnsupportedError -> unsupported, anything
// else -> internal.

#include <stdexcept>
#include <string>

namespace qh {

struct UnsupportedError : std::runtime_error {
  explicit UnsupportedError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qh
