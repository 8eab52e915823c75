#include "qh/bernoulli.hpp"

#include <mutex>
#include <vector>

namespace qh {

const Rational& bernoulli(unsigned m) {
  static std::vector<Rational> cache{Rational(1)};
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  while (cache.size() <= m) {
    const unsigned k = static_cast<unsigned>(cache.size());
    // B_k = -1/(k+1) * sum_{j<k} C(k+1, j) B_j
    Rational acc(0);
    for (unsigned j = 0; j < k; ++j) acc += binomial(k + 1, j) * cache[j];
    cache.push_back(-acc / Rational(static_cast<long>(k) + 1));
  }
  return cache[m];
}

} // namespace qh
