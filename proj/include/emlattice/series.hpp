// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "emlattice/exactlin.hpp"

namespace emlattice {

using MultiIndex = std::vector<int>;

// Graded monomial enumeration for a fixed number of variables. Monomials are
// ordered by total degree, then by decreasing exponent of the first variable,
// recursively.
class MonomialTable {
 public:
  static std::shared_ptr<const MonomialTable> get(int nvars, int order);

  int nvars() const { return nvars_; }
  int order() const { return order_; }
  std::size_t count() const { return degree_offset_.back(); }
  std::size_t degree_begin(int n) const { return degree_offset_[static_cast<std::size_t>(n)]; }
  std::size_t degree_end(int n) const { return degree_offset_[static_cast<std::size_t>(n) + 1]; }
  std::span<const int> exponents(std::size_t idx) const {
    return {exps_.data() + idx * static_cast<std::size_t>(nvars_),
            static_cast<std::size_t>(nvars_)};
  }
  int degree(std::size_t idx) const { return degrees_[idx]; }

  static std::size_t rank(std::span<const int> e);
  static std::size_t count_up_to(int nvars, int order);

 private:
  MonomialTable(int nvars, int order);
  int nvars_;
  int order_;
  std::vector<std::size_t> degree_offset_;
  std::vector<int> exps_;
  std::vector<int> degrees_;
};

// Truncated power series in nvars variables: all coefficients of total degree
// at most order are known.
class TruncSeries {
 public:
  TruncSeries();
  TruncSeries(int nvars, int order);
  static TruncSeries constant(int nvars, int order, const Rational& c);
  static TruncSeries variable(int nvars, int order, int i);
  // Sum_n c_n <xi, v>^n, truncated at the series order.
  static TruncSeries univariate_composed(std::span<const Rational> coeffs, const QVector& v,
                                         int order);
  // e^{<xi, s>}.
  static TruncSeries exp_linear(const QVector& s, int order);

  int nvars() const { return nvars_; }
  int order() const { return order_; }
  std::size_t size() const { return coeffs_.size(); }
  std::span<const int> exponents(std::size_t idx) const { return table_->exponents(idx); }
  int degree_of(std::size_t idx) const { return table_->degree(idx); }
  std::size_t degree_begin(int n) const { return table_->degree_begin(n); }
  std::size_t degree_end(int n) const { return table_->degree_end(n); }

  const Rational& at(std::size_t idx) const { return coeffs_[idx]; }
  Rational& at(std::size_t idx) { return coeffs_[idx]; }
  Rational coeff(std::span<const int> e) const;
  void add_to(std::span<const int> e, const Rational& c);
  const Rational& constant_term() const { return coeffs_.front(); }

  TruncSeries truncated(int order) const;
  bool is_zero() const;
  // Lowest degree with a nonzero coefficient, order + 1 if zero.
  int valuation() const;
  Rational evaluate(const QVector& point) const;

  TruncSeries& operator+=(const TruncSeries& other);
  TruncSeries& operator-=(const TruncSeries& other);
  TruncSeries& operator*=(const Rational& c);
  TruncSeries operator-() const;
  bool operator==(const TruncSeries& other) const;

 private:
  int nvars_;
  int order_;
  std::shared_ptr<const MonomialTable> table_;
  std::vector<Rational> coeffs_;
};

TruncSeries operator+(TruncSeries a, const TruncSeries& b);
TruncSeries operator-(TruncSeries a, const TruncSeries& b);
TruncSeries operator*(TruncSeries a, const Rational& c);
// Product known up to min(order_a + val_b, order_b + val_a).
TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);

// Product truncated at `order`. The serial kernel loops over nonzero input
// pairs; the parallel kernel computes output coefficients independently.
TruncSeries multiply_serial(const TruncSeries& a, const TruncSeries& b, int order);
TruncSeries multiply_parallel(const TruncSeries& a, const TruncSeries& b, int order);
TruncSeries multiply(const TruncSeries& a, const TruncSeries& b, int order);

// s * <xi, v>; the order grows by one.
TruncSeries multiply_linear(const TruncSeries& s, const QVector& v);
// q with s = <xi, v> q up to s.order; throws NotDivisible otherwise.
TruncSeries divide_linear(const TruncSeries& s, const QVector& v);
// t(zeta) = s(M zeta), M of shape nvars x new_nvars.
TruncSeries substitute_linear(const TruncSeries& s, const QMatrix& m);
// Embed a series in the first variables of a larger ring, or permute.
TruncSeries embed(const TruncSeries& s, int new_nvars, std::span<const int> var_map);

}  // namespace emlattice
