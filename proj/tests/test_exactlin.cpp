// SPDX-License-Identifier: Apache-2.0
#include <random>

#include "doctest.h"
#include "emlattice/bernoulli.hpp"
#include "emlattice/errors.hpp"
#include "emlattice/exactlin.hpp"
#include "oracles.hpp"

using namespace emlattice;

namespace {

QMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<QVector> r;
  std::size_t cols = 0;
  for (auto row : rows) {
    QVector v;
    for (long x : row) v.emplace_back(x);
    cols = v.size();
    r.push_back(v);
  }
  return QMatrix::from_rows(r, cols);
}

}  // namespace

TEST_CASE("rational parsing and rounding") {
  CHECK(parse_rational("-6/4") == Rational(-3, 2));
  CHECK(parse_rational(" 7 ") == 7);
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("abc"), ParseError);
  CHECK(to_string(Rational(34187, 1050)) == "34187/1050");
  CHECK(floor_of(Rational(-7, 2)) == -4);
  CHECK(ceil_of(Rational(-7, 2)) == -3);
  CHECK(frac_of(Rational(-7, 2)) == Rational(1, 2));
  CHECK(lcm_of(15, 21) == 105);
}

TEST_CASE("determinant, inverse and solve") {
  QMatrix a = mat({{2, 1, 0}, {1, 3, 1}, {0, 1, 4}});
  CHECK(determinant(a) == 18);
  CHECK(a * inverse(a) == QMatrix::identity(3));
  QVector b{Rational(1), Rational(2), Rational(3)};
  auto x = solve(a, b);
  REQUIRE(x);
  CHECK(a * *x == b);
  QMatrix singular = mat({{1, 2}, {2, 4}});
  CHECK(determinant(singular) == 0);
  CHECK(rank(singular) == 1);
  CHECK_FALSE(solve(singular, QVector{Rational(1), Rational(0)}));
}

TEST_CASE("nullspace and integer kernel") {
  QMatrix m = mat({{1, 2, 3}, {2, 4, 6}});
  QMatrix n = nullspace(m);
  CHECK(n.cols() == 2);
  CHECK((m * n).is_zero());
  QMatrix k = integer_kernel(mat({{2, 3, 5}}));
  CHECK(k.cols() == 2);
  CHECK(k.is_integral());
  CHECK((mat({{2, 3, 5}}) * k).is_zero());
  // The kernel basis spans a saturated lattice: the Gram determinant is 2^2+3^2+5^2.
  CHECK(determinant(k.transpose() * k) == 38);
}

TEST_CASE("Hermite normal form of random integer matrices") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    QMatrix m(3, 4);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 4; ++j) m(i, j) = oracle::random_integer(rng, -6, 6);
    HermiteResult h = hermite_normal_form(m);
    CHECK(m * h.u == h.h);
    CHECK(abs(determinant(h.u)) == 1);
    CHECK(h.u.is_integral());
    CHECK(h.rank == rank(m));
    // Lower triangular column echelon form.
    for (std::size_t j = 0; j < h.h.cols(); ++j)
      for (std::size_t i = 0; i < std::min<std::size_t>(j, 3); ++i) CHECK(h.h(i, j) == 0);
  }
}

TEST_CASE("lattices and rational spaces") {
  Lattice l = Lattice::from_generators(3, std::vector<QVector>{{2, 0, 0}, {0, 2, 0}, {1, 1, 0}});
  CHECK(l.rank() == 2);
  CHECK(l.contains(QVector{3, 1, 0}));
  CHECK_FALSE(l.contains(QVector{1, 0, 0}));
  CHECK(l.squared_covolume(ScalarProduct::standard(3)) == 4);

  CHECK(primitive_integer(QVector{4, -6}) == QVector{2, -3});
  CHECK(primitive_integer(QVector{Rational(1, 2), Rational(1, 3)}) == QVector{3, 2});

  RationalSpace plane = RationalSpace::standard(2);
  CHECK(plane.is_standard());
  CHECK(plane.coordinates(QVector{3, 4}) == QVector{3, 4});

  QMatrix dirs = mat({{2}, {4}, {0}});
  QMatrix sat = saturated_sublattice(dirs);
  CHECK(sat.cols() == 1);
  CHECK(primitive_integer(sat.column(0)) == QVector{1, 2, 0});
}

TEST_CASE("scalar products validate and project") {
  CHECK_THROWS_AS(ScalarProduct(mat({{1, 2}, {0, 1}})), DomainError);
  CHECK_THROWS_AS(ScalarProduct(mat({{1, 2}, {2, 1}})), DomainError);
  ScalarProduct q(mat({{2, 1}, {1, 2}}));
  CHECK(q(QVector{1, 0}, QVector{0, 1}) == 1);

  RationalSpace space = RationalSpace::standard(q);
  QMatrix line = mat({{1}, {0}});
  QMatrix proj = orthogonal_projection(space, line);
  CHECK((proj * line).is_zero());
  // The image is Q-orthogonal to the line.
  QVector img = proj * QVector{0, 1};
  CHECK(q(img, QVector{1, 0}) == 0);
  RationalSpace quot = quotient_lattice(space, line);
  CHECK(quot.dim() == 1);
}

TEST_CASE("LLL reduction keeps the lattice") {
  Lattice l(2, mat({{1, 100}, {0, 1}}));
  Lattice r = lll_reduce(l, ScalarProduct::standard(2));
  CHECK(r.rank() == 2);
  CHECK(abs(determinant(r.basis())) == 1);
  for (const auto& col : r.basis().columns()) CHECK(dot(col, col) == 1);
}

TEST_CASE("Bernoulli numbers and polynomials agree with the oracle") {
  for (unsigned n = 0; n <= 20; ++n) CHECK(bernoulli_number(n) == oracle::bernoulli_number(n));
  CHECK(bernoulli_number(1) == Rational(-1, 2));
  CHECK(bernoulli_number(12) == Rational(-691, 2730));
  for (unsigned n = 0; n <= 10; ++n)
    for (auto t : {Rational(0), Rational(1, 3), Rational(5, 7), Rational(-2, 9)})
      CHECK(bernoulli_value(n, t) == oracle::bernoulli_poly(n, t));
}

TEST_CASE("Bernoulli Taylor coefficients") {
  auto c = bernoulli_taylor(Rational(1, 3), 5);
  REQUIRE(c.size() == 6);
  for (unsigned n = 0; n <= 5; ++n)
    CHECK(c[n] == oracle::bernoulli_poly(n, Rational(1, 3)) / Rational(factorial(n)));
}
