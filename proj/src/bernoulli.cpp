// SPDX-License-Identifier: Apache-2.0
#include "emlattice/bernoulli.hpp"

#include <mutex>

namespace emlattice {

Rational bernoulli_number(unsigned n) {
  static std::mutex mu;
  static std::vector<Rational> table{Rational(1)};
  std::lock_guard<std::mutex> lock(mu);
  while (table.size() <= n) {
    const unsigned m = static_cast<unsigned>(table.size());
    Rational acc;
    for (unsigned k = 0; k < m; ++k) acc += Rational(binomial(m + 1, k)) * table[k];
    table.push_back(-acc / (m + 1));
  }
  return table[n];
}

std::vector<Rational> bernoulli_poly(unsigned n) {
  std::vector<Rational> c(n + 1);
  for (unsigned k = 0; k <= n; ++k) c[n - k] = Rational(binomial(n, k)) * bernoulli_number(k);
  return c;
}

Rational bernoulli_value(unsigned n, const Rational& t) {
  std::vector<Rational> c = bernoulli_poly(n);
  Rational v;
  for (unsigned i = n + 1; i-- > 0;) v = v * t + c[i];
  return v;
}

std::vector<Rational> bernoulli_taylor(const Rational& t, int order) {
  std::vector<Rational> out;
  Integer fact = 1;
  for (int n = 0; n <= order; ++n) {
    if (n > 0) fact *= n;
    out.push_back(bernoulli_value(static_cast<unsigned>(n), t) / Rational(fact));
  }
  return out;
}

}  // namespace emlattice
