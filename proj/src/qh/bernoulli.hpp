#pragma once

// Bernoulli numbers B_m (B_1 = -1/2 convention), exact and cached.
// Computed by the defining recurrence sum_{j=0}^{m} C(m+1, j) B_j = 0.

#include "qh/rational.hpp"

namespace qh {

const Rational& bernoulli(unsigned m);

} // namespace qh
