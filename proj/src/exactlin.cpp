// SPDX-License-Identifier: Apache-2.0
#include "emlattice/exactlin.hpp"

#include <algorithm>
#include <utility>

#include "emlattice/errors.hpp"

namespace emlattice {

// ---------------------------------------------------------------- QMatrix

QMatrix::QMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::from_columns(std::span<const QVector> columns, std::size_t rows) {
  QMatrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) throw DomainError("column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

QMatrix QMatrix::from_rows(std::span<const QVector> rows, std::size_t cols) {
  QMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw DomainError("row length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

QVector QMatrix::column(std::size_t j) const {
  QVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

QVector QMatrix::row(std::size_t i) const {
  return QVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                 data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

std::vector<QVector> QMatrix::columns() const {
  std::vector<QVector> out;
  out.reserve(cols_);
  for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
  return out;
}

void QMatrix::set_column(std::size_t j, const QVector& v) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool QMatrix::is_integral() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const Rational& r) { return r.get_den() == 1; });
}

bool QMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& r) { return r == 0; });
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.rows()) throw DomainError("matrix product shape mismatch");
  QMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (b(k, j) != 0) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

QVector operator*(const QMatrix& a, const QVector& x) {
  if (a.cols() != x.size()) throw DomainError("matrix-vector shape mismatch");
  QVector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (x[j] != 0 && a(i, j) != 0) y[i] += a(i, j) * x[j];
  return y;
}

QMatrix operator+(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DomainError("shape mismatch");
  QMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

QMatrix operator-(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DomainError("shape mismatch");
  QMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

// ---------------------------------------------------------------- vectors

Rational dot(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) throw DomainError("dot product length mismatch");
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  return s;
}

QVector add(const QVector& a, const QVector& b) {
  QVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

QVector sub(const QVector& a, const QVector& b) {
  QVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

QVector scale(const QVector& a, const Rational& c) {
  QVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c;
  return r;
}

bool is_zero(const QVector& a) {
  return std::all_of(a.begin(), a.end(), [](const Rational& r) { return r == 0; });
}

bool is_integral(const QVector& a) {
  return std::all_of(a.begin(), a.end(), [](const Rational& r) { return r.get_den() == 1; });
}

Integer common_denominator(const QVector& a) {
  Integer d = 1;
  for (const auto& r : a) d = lcm_of(d, r.get_den());
  return d;
}

Integer common_denominator(const QMatrix& a) {
  Integer d = 1;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) d = lcm_of(d, a(i, j).get_den());
  return d;
}

// ---------------------------------------------------------------- elimination

RowEchelon rref(const QMatrix& m) {
  QMatrix r = m;
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < r.cols() && row < r.rows(); ++col) {
    std::size_t p = row;
    while (p < r.rows() && r(p, col) == 0) ++p;
    if (p == r.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < r.cols(); ++j) std::swap(r(p, j), r(row, j));
    Rational inv = 1 / r(row, col);
    for (std::size_t j = col; j < r.cols(); ++j) r(row, j) *= inv;
    for (std::size_t i = 0; i < r.rows(); ++i) {
      if (i == row || r(i, col) == 0) continue;
      Rational f = r(i, col);
      for (std::size_t j = col; j < r.cols(); ++j)
        if (r(row, j) != 0) r(i, j) -= f * r(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(r), std::move(pivots)};
}

std::size_t rank(const QMatrix& m) { return rref(m).pivots.size(); }

std::size_t rank(std::span<const QVector> vectors, std::size_t dim) {
  if (vectors.empty()) return 0;
  return rank(QMatrix::from_rows(vectors, dim));
}

Rational determinant(const QMatrix& m) {
  if (m.rows() != m.cols()) throw DomainError("determinant of non-square matrix");
  QMatrix a = m;
  const std::size_t n = a.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a(i, c) == 0) continue;
      Rational f = a(i, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

QMatrix inverse(const QMatrix& m) {
  if (m.rows() != m.cols()) throw DomainError("inverse of non-square matrix");
  const std::size_t n = m.rows();
  QMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  RowEchelon e = rref(aug);
  if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1))
    throw DomainError("singular matrix");
  QMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

std::optional<QVector> solve(const QMatrix& a, const QVector& b) {
  if (a.rows() != b.size()) throw DomainError("solve shape mismatch");
  QMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  RowEchelon e = rref(aug);
  QVector x(a.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] == a.cols()) return std::nullopt;
    x[e.pivots[r]] = e.reduced(r, a.cols());
  }
  return x;
}

QMatrix nullspace(const QMatrix& m) {
  RowEchelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<QVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    QVector v(m.cols());
    v[f] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, f);
    basis.push_back(std::move(v));
  }
  return QMatrix::from_columns(basis, m.cols());
}

std::vector<std::size_t> independent_columns(const QMatrix& m) {
  return rref(m).pivots;
}

// ---------------------------------------------------------------- Hermite

namespace {

using IMat = std::vector<std::vector<Integer>>;

void column_combine(IMat& a, std::size_t rows, std::size_t c1, std::size_t c2,
                    const Integer& x, const Integer& y, const Integer& z, const Integer& w) {
  // (col1, col2) <- (x col1 + y col2, z col1 + w col2)
  for (std::size_t i = 0; i < rows; ++i) {
    Integer p = x * a[i][c1] + y * a[i][c2];
    Integer q = z * a[i][c1] + w * a[i][c2];
    a[i][c1] = std::move(p);
    a[i][c2] = std::move(q);
  }
}

}  // namespace

HermiteResult hermite_normal_form(const QMatrix& m) {
  if (!m.is_integral()) throw DomainError("HNF needs an integral matrix");
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  IMat a(rows, std::vector<Integer>(cols));
  IMat u(cols, std::vector<Integer>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = m(i, j).get_num();
  for (std::size_t j = 0; j < cols; ++j) u[j][j] = 1;

  std::size_t col = 0;
  for (std::size_t i = 0; i < rows && col < cols; ++i) {
    for (std::size_t j = col + 1; j < cols; ++j) {
      if (a[i][j] == 0) continue;
      Integer g, x, y;
      mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a[i][col].get_mpz_t(),
                 a[i][j].get_mpz_t());
      Integer z = -a[i][j] / g;
      Integer w = a[i][col] / g;
      column_combine(a, rows, col, j, x, y, z, w);
      column_combine(u, cols, col, j, x, y, z, w);
    }
    if (a[i][col] == 0) continue;
    if (a[i][col] < 0) {
      for (std::size_t r = 0; r < rows; ++r) a[r][col] = -a[r][col];
      for (std::size_t r = 0; r < cols; ++r) u[r][col] = -u[r][col];
    }
    for (std::size_t j = 0; j < col; ++j) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), a[i][j].get_mpz_t(), a[i][col].get_mpz_t());
      if (q == 0) continue;
      for (std::size_t r = 0; r < rows; ++r) a[r][j] -= q * a[r][col];
      for (std::size_t r = 0; r < cols; ++r) u[r][j] -= q * u[r][col];
    }
    ++col;
  }
  HermiteResult res{QMatrix(rows, cols), QMatrix(cols, cols), col};
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) res.h(i, j) = a[i][j];
  for (std::size_t i = 0; i < cols; ++i)
    for (std::size_t j = 0; j < cols; ++j) res.u(i, j) = u[i][j];
  return res;
}

QMatrix integer_kernel(const QMatrix& m) {
  HermiteResult hr = hermite_normal_form(m);
  const std::size_t n = m.cols();
  QMatrix k(n, n - hr.rank);
  for (std::size_t j = hr.rank; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) k(i, j - hr.rank) = hr.u(i, j);
  return k;
}

// ---------------------------------------------------------------- ScalarProduct

ScalarProduct::ScalarProduct(QMatrix gram) : gram_(std::move(gram)) {
  const std::size_t n = gram_.rows();
  if (gram_.cols() != n) throw DomainError("scalar product matrix must be square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (gram_(i, j) != gram_(j, i)) throw DomainError("scalar product matrix not symmetric");
  for (std::size_t k = 1; k <= n; ++k) {
    QMatrix minor(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) minor(i, j) = gram_(i, j);
    if (determinant(minor) <= 0) throw DomainError("scalar product not positive definite");
  }
}

ScalarProduct ScalarProduct::standard(std::size_t dim) {
  return ScalarProduct(QMatrix::identity(dim));
}

Rational ScalarProduct::operator()(const QVector& x, const QVector& y) const {
  return dot(x, gram_ * y);
}

// ---------------------------------------------------------------- Lattice

Lattice::Lattice(std::size_t ambient_dim, QMatrix basis)
    : ambient_(ambient_dim), basis_(std::move(basis)) {
  if (basis_.rows() != ambient_) throw DomainError("lattice basis has wrong ambient dimension");
  if (emlattice::rank(basis_) != basis_.cols()) throw DomainError("lattice basis is not independent");
}

Lattice Lattice::standard(std::size_t dim) { return Lattice(dim, QMatrix::identity(dim)); }

Lattice Lattice::from_generators(std::size_t ambient_dim, std::span<const QVector> gens) {
  QMatrix g = QMatrix::from_columns(gens, ambient_dim);
  Integer d = common_denominator(g);
  QMatrix scaled = g;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) scaled(i, j) *= d;
  HermiteResult hr = hermite_normal_form(scaled);
  QMatrix basis(ambient_dim, hr.rank);
  for (std::size_t i = 0; i < ambient_dim; ++i)
    for (std::size_t j = 0; j < hr.rank; ++j) basis(i, j) = hr.h(i, j) / Rational(d);
  return Lattice(ambient_dim, std::move(basis));
}

std::optional<QVector> Lattice::coordinates(const QVector& x) const {
  if (x.size() != ambient_) throw DomainError("point has wrong dimension");
  return solve(basis_, x);
}

bool Lattice::contains(const QVector& x) const {
  auto c = coordinates(x);
  return c && is_integral(*c);
}

Rational Lattice::squared_covolume(const ScalarProduct& q) const {
  return determinant(basis_.transpose() * q.matrix() * basis_);
}

// ---------------------------------------------------------------- RationalSpace

RationalSpace::RationalSpace(Lattice lattice, ScalarProduct q)
    : lattice_(std::move(lattice)), q_(std::move(q)) {
  if (q_.dim() != lattice_.ambient_dim())
    throw DomainError("scalar product dimension does not match the ambient space");
}

RationalSpace RationalSpace::standard(std::size_t dim) {
  return RationalSpace(Lattice::standard(dim), ScalarProduct::standard(dim));
}

RationalSpace RationalSpace::standard(ScalarProduct q) {
  std::size_t d = q.dim();
  return RationalSpace(Lattice::standard(d), std::move(q));
}

QMatrix RationalSpace::gram() const { return basis().transpose() * q_.matrix() * basis(); }

QVector RationalSpace::coordinates(const QVector& x) const {
  auto c = lattice_.coordinates(x);
  if (!c) throw DomainError("point does not lie in the space");
  return *c;
}

QVector RationalSpace::point(const QVector& coords) const { return basis() * coords; }

bool RationalSpace::contains(const QVector& x) const {
  return lattice_.coordinates(x).has_value();
}

bool RationalSpace::is_standard() const {
  return dim() == ambient_dim() && basis() == QMatrix::identity(dim());
}

// ---------------------------------------------------------------- primitive vectors

QVector primitive_integer(const QVector& v) {
  if (is_zero(v)) throw DomainError("zero vector has no primitive multiple");
  Integer d = common_denominator(v);
  std::vector<Integer> z(v.size());
  Integer g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    z[i] = Rational(v[i] * Rational(d)).get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z[i].get_mpz_t());
  }
  QVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rational(Integer(z[i] / g));
  return out;
}

QVector primitive_vector(const QVector& v, const Lattice& lattice) {
  auto c = lattice.coordinates(v);
  if (!c) throw DomainError("vector is outside the span of the lattice");
  return lattice.basis() * primitive_integer(*c);
}

// ---------------------------------------------------------------- projections

QMatrix orthogonal_projection(const RationalSpace& space, const QMatrix& l_basis) {
  const std::size_t d = space.ambient_dim();
  if (l_basis.cols() == 0) return QMatrix::identity(d);
  if (l_basis.rows() != d) throw DomainError("subspace basis has wrong dimension");
  if (rank(l_basis) != l_basis.cols()) throw DomainError("subspace basis is dependent");
  for (std::size_t j = 0; j < l_basis.cols(); ++j)
    if (!space.contains(l_basis.column(j)))
      throw DomainError("subspace is not contained in the space");
  const QMatrix& g = space.q().matrix();
  QMatrix lt_g = l_basis.transpose() * g;
  QMatrix m = inverse(lt_g * l_basis);
  return QMatrix::identity(d) - l_basis * m * lt_g;
}

RationalSpace quotient_lattice(const RationalSpace& space, const QMatrix& l_basis) {
  QMatrix p = orthogonal_projection(space, l_basis);
  std::vector<QVector> gens;
  for (std::size_t j = 0; j < space.dim(); ++j) gens.push_back(p * space.basis().column(j));
  return RationalSpace(Lattice::from_generators(space.ambient_dim(), gens), space.q());
}

// ---------------------------------------------------------------- LLL

namespace {

Integer round_nearest(const Rational& x) { return floor_of(x + Rational(1, 2)); }

struct Gso {
  std::vector<std::vector<Rational>> mu;
  std::vector<Rational> bnorm;
};

Gso gram_schmidt(const std::vector<QVector>& b, const QMatrix& g) {
  const std::size_t n = b.size();
  Gso s{std::vector<std::vector<Rational>>(n, std::vector<Rational>(n)),
        std::vector<Rational>(n)};
  std::vector<QVector> star(n);
  for (std::size_t i = 0; i < n; ++i) {
    star[i] = b[i];
    QVector gb = g * b[i];
    for (std::size_t j = 0; j < i; ++j) {
      s.mu[i][j] = dot(star[j], gb) / s.bnorm[j];
      if (s.mu[i][j] != 0) star[i] = sub(star[i], scale(star[j], s.mu[i][j]));
    }
    s.bnorm[i] = dot(star[i], g * star[i]);
  }
  return s;
}

}  // namespace

QMatrix lll_columns(const QMatrix& basis, const QMatrix& g) {
  std::vector<QVector> b = basis.columns();
  const std::size_t n = b.size();
  if (n <= 1) return basis;
  const Rational delta(3, 4);
  Gso s = gram_schmidt(b, g);
  std::size_t k = 1;
  while (k < n) {
    for (std::size_t jj = k; jj-- > 0;) {
      Integer q = round_nearest(s.mu[k][jj]);
      if (q == 0) continue;
      Rational qr(q);
      b[k] = sub(b[k], scale(b[jj], qr));
      for (std::size_t l = 0; l < jj; ++l) s.mu[k][l] -= qr * s.mu[jj][l];
      s.mu[k][jj] -= qr;
    }
    Rational m = s.mu[k][k - 1];
    if (s.bnorm[k] >= (delta - m * m) * s.bnorm[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      s = gram_schmidt(b, g);
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
  return QMatrix::from_columns(b, basis.rows());
}

Lattice lll_reduce(const Lattice& lattice, const ScalarProduct& q) {
  return Lattice(lattice.ambient_dim(), lll_columns(lattice.basis(), q.matrix()));
}

// ---------------------------------------------------------------- integer feasibility

namespace {

// Integral rows spanning the annihilator of span(directions) in Q^k.
QMatrix annihilator_rows(const QMatrix& directions) {
  const std::size_t k = directions.rows();
  QMatrix ns = nullspace(directions.transpose());
  QMatrix rows(ns.cols(), k);
  for (std::size_t j = 0; j < ns.cols(); ++j) {
    QVector r = primitive_integer(ns.column(j));
    for (std::size_t i = 0; i < k; ++i) rows(j, i) = r[i];
  }
  return rows;
}

}  // namespace

QMatrix saturated_sublattice(const QMatrix& directions) {
  const std::size_t k = directions.rows();
  QMatrix n = annihilator_rows(directions);
  if (n.rows() == 0) return QMatrix::identity(k);
  return integer_kernel(n);
}

std::optional<QVector> integer_point_in_affine_span(const QVector& point,
                                                    const QMatrix& directions) {
  const std::size_t k = point.size();
  QMatrix n = annihilator_rows(directions);
  if (n.rows() == 0) {
    QVector z(k);
    for (std::size_t i = 0; i < k; ++i) z[i] = floor_of(point[i]);
    return z;
  }
  QVector b = n * point;
  if (!is_integral(b)) return std::nullopt;
  HermiteResult hr = hermite_normal_form(n);
  // n has full row rank, so every row carries a pivot of h.
  std::vector<Rational> y(hr.rank);
  std::size_t j = 0;
  for (std::size_t i = 0; i < n.rows() && j < hr.rank; ++i) {
    if (hr.h(i, j) == 0) continue;
    Rational acc = b[i];
    for (std::size_t l = 0; l < j; ++l) acc -= hr.h(i, l) * y[l];
    y[j] = acc / hr.h(i, j);
    if (!is_integer(y[j])) return std::nullopt;
    ++j;
  }
  QVector z(k);
  for (std::size_t c = 0; c < hr.rank; ++c)
    for (std::size_t i = 0; i < k; ++i) z[i] += hr.u(i, c) * y[c];
  return z;
}

}  // namespace emlattice
