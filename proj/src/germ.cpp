// SPDX-License-Identifier: Apache-2.0
#include "emlattice/germ.hpp"

#include <algorithm>
#include <utility>

#include "emlattice/errors.hpp"

namespace emlattice {

NormalizedForm normalize_form(const QVector& v) {
  QVector p = primitive_integer(v);
  std::size_t first = 0;
  while (p[first] == 0) ++first;
  if (p[first] < 0)
    for (auto& x : p) x = -x;
  Rational s = v[first] / p[first];
  return {std::move(p), std::move(s)};
}

MeroGerm::MeroGerm() : num_(0, 0) {}

MeroGerm::MeroGerm(TruncSeries num, const std::vector<QVector>& den) : num_(std::move(num)) {
  Rational total_scale = 1;
  for (const auto& v : den) {
    if (static_cast<int>(v.size()) != num_.nvars())
      throw DomainError("denominator form has the wrong length");
    if (is_zero(v)) throw DomainError("zero linear form in a denominator");
    NormalizedForm nf = normalize_form(v);
    total_scale *= nf.scale;
    den_.push_back(std::move(nf.form));
  }
  if (total_scale != 1) num_ *= 1 / total_scale;
  std::sort(den_.begin(), den_.end());
}

MeroGerm MeroGerm::analytic(TruncSeries s) { return MeroGerm(std::move(s), {}); }

MeroGerm MeroGerm::zero(int nvars, int valid_order) {
  return MeroGerm(TruncSeries(nvars, valid_order), {});
}

namespace {

// Forms of `all` not matched by `part`; both sorted.
std::vector<QVector> multiset_minus(const std::vector<QVector>& all,
                                    const std::vector<QVector>& part) {
  std::vector<QVector> out;
  std::set_difference(all.begin(), all.end(), part.begin(), part.end(), std::back_inserter(out));
  return out;
}

std::vector<QVector> multiset_union(const std::vector<QVector>& a, const std::vector<QVector>& b) {
  std::vector<QVector> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

TruncSeries lift_to_denominator(const MeroGerm& g, const std::vector<QVector>& target,
                                int num_order) {
  TruncSeries n = g.numerator();
  for (const auto& f : multiset_minus(target, g.denominator())) n = multiply_linear(n, f);
  return n.truncated(num_order);
}

}  // namespace

MeroGerm germ_sum(const std::vector<MeroGerm>& terms, int nvars, int valid_order) {
  std::vector<QVector> u;
  int valid = valid_order;
  for (const auto& t : terms) {
    if (t.nvars() != nvars) throw DomainError("germ variable count mismatch");
    u = multiset_union(u, t.denominator());
    valid = std::min(valid, t.valid_order());
  }
  const int num_order = valid + static_cast<int>(u.size());
  TruncSeries acc(nvars, num_order);
  for (const auto& t : terms) {
    if (t.numerator().is_zero()) continue;
    acc += lift_to_denominator(t, u, num_order);
  }
  if (acc.is_zero()) return MeroGerm::zero(nvars, valid);
  MeroGerm out;
  out = MeroGerm(std::move(acc), u);
  return out;
}

MeroGerm germ_add(const MeroGerm& a, const MeroGerm& b) {
  return germ_sum({a, b}, a.nvars(), std::min(a.valid_order(), b.valid_order()));
}

MeroGerm germ_neg(const MeroGerm& a) { return germ_scale(a, -1); }

MeroGerm germ_sub(const MeroGerm& a, const MeroGerm& b) { return germ_add(a, germ_neg(b)); }

MeroGerm germ_scale(const MeroGerm& a, const Rational& c) {
  return MeroGerm(a.numerator() * c, a.denominator());
}

MeroGerm germ_mul(const MeroGerm& a, const MeroGerm& b) {
  MeroGerm out;
  out.num_ = a.num_ * b.num_;
  out.den_ = a.den_;
  out.den_.insert(out.den_.end(), b.den_.begin(), b.den_.end());
  std::sort(out.den_.begin(), out.den_.end());
  return out;
}

MeroGerm multiply_by_form(const MeroGerm& g, const QVector& v) {
  NormalizedForm nf = normalize_form(v);
  auto it = std::find(g.den_.begin(), g.den_.end(), nf.form);
  MeroGerm out;
  if (it != g.den_.end()) {
    out.den_ = g.den_;
    out.den_.erase(out.den_.begin() + (it - g.den_.begin()));
    out.num_ = g.num_ * nf.scale;
  } else {
    out.den_ = g.den_;
    out.num_ = multiply_linear(g.num_, v);
  }
  return out;
}

TruncSeries to_analytic(const MeroGerm& g) {
  TruncSeries n = g.numerator();
  if (g.valid_order() < 0) throw OrderUnderflow("germ known below order zero");
  for (const auto& f : g.denominator()) n = divide_linear(n, f);
  return n;
}

MeroGerm substitute_linear(const MeroGerm& g, const QMatrix& m) {
  TruncSeries n = substitute_linear(g.numerator(), m);
  QMatrix mt = m.transpose();
  std::vector<QVector> den;
  for (const auto& f : g.denominator()) {
    QVector w = mt * f;
    if (is_zero(w)) throw DomainError("substitution annihilates a denominator form");
    den.push_back(std::move(w));
  }
  return MeroGerm(std::move(n), den);
}

ResidueResult residue_along(const MeroGerm& g, const QVector& v) {
  MeroGerm h = multiply_by_form(g, v);
  QMatrix row(1, v.size());
  for (std::size_t i = 0; i < v.size(); ++i) row(0, i) = v[i];
  QMatrix basis = nullspace(row);
  return {substitute_linear(h, basis), basis};
}

bool germ_equal(const MeroGerm& a, const MeroGerm& b) {
  return germ_sub(a, b).numerator().is_zero();
}

}  // namespace emlattice
