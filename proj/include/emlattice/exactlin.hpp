// SPDX-License-Identifier: Apache-2.0
//
// Exact rational linear algebra and lattices.
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "emlattice/rational.hpp"

namespace emlattice {

using QVector = std::vector<Rational>;

class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols);

  static QMatrix identity(std::size_t n);
  // Columns all of length `rows`; `rows` is needed when the list is empty.
  static QMatrix from_columns(std::span<const QVector> columns, std::size_t rows);
  static QMatrix from_rows(std::span<const QVector> rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  QVector column(std::size_t j) const;
  QVector row(std::size_t i) const;
  std::vector<QVector> columns() const;
  void set_column(std::size_t j, const QVector& v);

  QMatrix transpose() const;
  bool is_integral() const;
  bool is_zero() const;

  bool operator==(const QMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

QMatrix operator*(const QMatrix& a, const QMatrix& b);
QVector operator*(const QMatrix& a, const QVector& x);
QMatrix operator+(const QMatrix& a, const QMatrix& b);
QMatrix operator-(const QMatrix& a, const QMatrix& b);

// Vector helpers.
Rational dot(const QVector& a, const QVector& b);
QVector add(const QVector& a, const QVector& b);
QVector sub(const QVector& a, const QVector& b);
QVector scale(const QVector& a, const Rational& c);
bool is_zero(const QVector& a);
bool is_integral(const QVector& a);
Integer common_denominator(const QVector& a);
Integer common_denominator(const QMatrix& a);

struct RowEchelon {
  QMatrix reduced;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

RowEchelon rref(const QMatrix& m);
std::size_t rank(const QMatrix& m);
std::size_t rank(std::span<const QVector> vectors, std::size_t dim);
Rational determinant(const QMatrix& m);
QMatrix inverse(const QMatrix& m);
// Some solution of a x = b, or nothing when inconsistent.
std::optional<QVector> solve(const QMatrix& a, const QVector& b);
// Columns form a basis of {x : m x = 0}.
QMatrix nullspace(const QMatrix& m);
// Indices of a maximal independent subset of the columns, greedy from the left.
std::vector<std::size_t> independent_columns(const QMatrix& m);

struct HermiteResult {
  QMatrix h;         // lower-triangular column echelon form, m * u
  QMatrix u;         // unimodular
  std::size_t rank;  // number of nonzero columns of h
};

// Column-style HNF: pivots positive, entries left of a pivot reduced into [0, pivot).
HermiteResult hermite_normal_form(const QMatrix& m);
// Z-basis (columns) of {z in Z^n : m z = 0} for an integral matrix m.
QMatrix integer_kernel(const QMatrix& m);

class ScalarProduct {
 public:
  ScalarProduct() = default;
  explicit ScalarProduct(QMatrix gram);
  static ScalarProduct standard(std::size_t dim);

  const QMatrix& matrix() const { return gram_; }
  std::size_t dim() const { return gram_.rows(); }
  Rational operator()(const QVector& x, const QVector& y) const;

 private:
  QMatrix gram_;
};

class Lattice {
 public:
  Lattice() = default;
  // Basis given as independent columns in the ambient space.
  Lattice(std::size_t ambient_dim, QMatrix basis);
  static Lattice standard(std::size_t dim);
  static Lattice from_generators(std::size_t ambient_dim, std::span<const QVector> gens);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t rank() const { return basis_.cols(); }
  const QMatrix& basis() const { return basis_; }

  std::optional<QVector> coordinates(const QVector& x) const;
  bool contains(const QVector& x) const;
  Rational squared_covolume(const ScalarProduct& q) const;

 private:
  std::size_t ambient_ = 0;
  QMatrix basis_;
};

// A rational subspace W of Q^d with the lattice W ∩ Λ and a scalar product.
class RationalSpace {
 public:
  RationalSpace() = default;
  RationalSpace(Lattice lattice, ScalarProduct q);
  static RationalSpace standard(std::size_t dim);
  static RationalSpace standard(ScalarProduct q);

  std::size_t dim() const { return lattice_.rank(); }
  std::size_t ambient_dim() const { return lattice_.ambient_dim(); }
  const Lattice& lattice() const { return lattice_; }
  const ScalarProduct& q() const { return q_; }
  const QMatrix& basis() const { return lattice_.basis(); }

  // Gram matrix of the lattice basis.
  QMatrix gram() const;
  // Lattice coordinates of an ambient point of W; throws DomainError outside W.
  QVector coordinates(const QVector& x) const;
  QVector point(const QVector& coords) const;
  bool contains(const QVector& x) const;
  bool is_standard() const;

 private:
  Lattice lattice_;
  ScalarProduct q_;
};

// Shortest lattice vector on the ray through v.
QVector primitive_vector(const QVector& v, const Lattice& lattice);
// Primitive integer vector on the ray through v (v in Q^n, lattice Z^n).
QVector primitive_integer(const QVector& v);

// Q-orthogonal projection of the ambient space onto L^perp along L.
QMatrix orthogonal_projection(const RationalSpace& space, const QMatrix& l_basis);
// W ∩ L^perp with the projected lattice.
RationalSpace quotient_lattice(const RationalSpace& space, const QMatrix& l_basis);
// LLL-reduced basis (delta = 3/4) with respect to q.
Lattice lll_reduce(const Lattice& lattice, const ScalarProduct& q);
// Columns of an LLL-reduced basis of the lattice spanned by the columns of b,
// for the Gram matrix g of the coordinate space.
QMatrix lll_columns(const QMatrix& b, const QMatrix& g);

// Some z in Z^k with z - point in span(directions), if one exists.
std::optional<QVector> integer_point_in_affine_span(const QVector& point,
                                                    const QMatrix& directions);
// Z-basis (columns) of Z^k ∩ span(directions).
QMatrix saturated_sublattice(const QMatrix& directions);

}  // namespace emlattice
