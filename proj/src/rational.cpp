// SPDX-License-Identifier: Apache-2.0
#include "emlattice/rational.hpp"

#include <cctype>

#include "emlattice/errors.hpp"

namespace emlattice {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw DomainError("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s))
    throw ParseError("malformed rational literal '" + std::string(whole) + "'");
  Integer z(std::string(s), 10);
  return neg ? Integer(-z) : z;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  if (text.empty()) throw ParseError("empty rational literal");
  auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    Integer n = parse_integer(text.substr(0, slash), text);
    std::string_view ds = text.substr(slash + 1);
    if (!all_digits(ds))
      throw ParseError("malformed rational literal '" + std::string(text) + "'");
    Integer d(std::string(ds), 10);
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return make_rational(n, d);
  }
  auto dot = text.find('.');
  if (dot != std::string_view::npos) {
    std::string_view ip = text.substr(0, dot);
    std::string_view fp = text.substr(dot + 1);
    bool neg = !ip.empty() && ip[0] == '-';
    std::string_view ipd = ip;
    if (!ipd.empty() && (ipd[0] == '-' || ipd[0] == '+')) ipd.remove_prefix(1);
    if ((!ipd.empty() && !all_digits(ipd)) || !all_digits(fp))
      throw ParseError("malformed decimal literal '" + std::string(text) + "'");
    std::string digits = std::string(ipd) + std::string(fp);
    Integer n(digits, 10);
    Integer d;
    mpz_ui_pow_ui(d.get_mpz_t(), 10, fp.size());
    return make_rational(neg ? Integer(-n) : n, d);
  }
  return Rational(parse_integer(text, text));
}

std::string to_string(const Rational& r) { return r.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }

Integer floor_of(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

Integer ceil_of(const Rational& r) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

Rational frac_of(const Rational& r) { return r - Rational(floor_of(r)); }

bool is_integer(const Rational& r) { return r.get_den() == 1; }

int sign_of(const Rational& r) { return sgn(r); }

Integer lcm_of(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

Integer factorial(unsigned n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

Integer binomial(unsigned n, unsigned k) {
  Integer b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

Rational pow_rational(const Rational& base, unsigned e) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), e);
  return r;
}

}  // namespace emlattice
