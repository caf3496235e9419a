// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "emlattice/rational.hpp"

namespace emlattice {

// B_n with B_1 = -1/2.
Rational bernoulli_number(unsigned n);
// Coefficients (ascending powers of t) of b(n, t).
std::vector<Rational> bernoulli_poly(unsigned n);
Rational bernoulli_value(unsigned n, const Rational& t);
// b(n, t) / n! for n = 0..order.
std::vector<Rational> bernoulli_taylor(const Rational& t, int order);

}  // namespace emlattice
