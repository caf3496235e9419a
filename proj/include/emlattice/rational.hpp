// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace emlattice {

using Integer = mpz_class;
using Rational = mpq_class;

Rational make_rational(const Integer& num, const Integer& den);
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

Integer floor_of(const Rational& r);
Integer ceil_of(const Rational& r);
// r - floor(r), in [0, 1).
Rational frac_of(const Rational& r);
bool is_integer(const Rational& r);
int sign_of(const Rational& r);

Integer lcm_of(const Integer& a, const Integer& b);
Integer factorial(unsigned n);
Integer binomial(unsigned n, unsigned k);
Rational pow_rational(const Rational& base, unsigned e);

}  // namespace emlattice
