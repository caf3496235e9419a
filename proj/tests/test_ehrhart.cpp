// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"
#include "emlattice/ehrhart.hpp"
#include "emlattice/errors.hpp"

using namespace emlattice;

namespace {

Polytope triangle357() {
  std::vector<QVector> tri{{Rational(1, 3), Rational(1, 5)}, {Rational(16, 3), Rational(1, 7)},
                           {Rational(37, 5), Rational(92, 7)}};
  return build_polytope(RationalSpace::standard(2), tri);
}

}  // namespace

TEST_CASE("quasi-polynomial evaluation") {
  QuasiPolynomial q;
  q.period = 2;
  q.degree = 1;
  q.residues = {{1, 2}, {0, 2}};
  CHECK(q.evaluate(3) == 6);
  CHECK(q.evaluate(4) == 9);
  CHECK(q.evaluate(-1) == -2);
  CHECK(q.coefficient(1) == std::vector<Rational>{2, 2});
  CHECK(q.minimal_period() == 2);
  q.residues = {{1, 2}, {1, 2}};
  CHECK(q.minimal_period() == 1);
}

TEST_CASE("unit square dilations") {
  Polytope sq = build_polytope(RationalSpace::standard(2), std::vector<QVector>{{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  EhrhartResult e = ehrhart_quasipoly(sq, Polynomial::constant(2, 1));
  CHECK(e.quasi.period == 1);
  CHECK(e.quasi.residues[0] == std::vector<Rational>{1, 2, 1});
  CHECK(count_dilate(sq, 0) == 1);
  CHECK(count_dilate(sq, 5) == 36);
}

TEST_CASE("357 triangle quasi-polynomial") {
  Polytope p = triangle357();
  EhrhartResult e = ehrhart_quasipoly(p, Polynomial::constant(2, 1));
  CHECK(e.quasi.period == 105);
  CHECK(e.quasi.degree == 2);
  for (long r = 0; r < 105; ++r) CHECK(e.quasi.residues[r][2] == Rational(34187, 1050));
  CHECK(count_dilate(p, 0) == 1);
  for (long t = 1; t <= 6; ++t) {
    CHECK(e.quasi.evaluate(t) == Rational(count_dilate(p, t)));
    CHECK(count_dilate(p, t) == brute_force_count(dilate(p, t)));
  }
  // Face tables evaluate to the dilated contributions.
  for (const auto& f : e.faces)
    for (long t : {1L, 2L, 11L})
      CHECK(f.evaluate(t) ==
            dilated_face_contribution(p, p.faces()[f.face], t, Polynomial::constant(2, 1)));
}

TEST_CASE("weighted quasi-polynomial") {
  Polytope p = triangle357();
  Polynomial h = Polynomial::monomial(2, {1, 0});
  EhrhartResult e = ehrhart_quasipoly(p, h);
  CHECK(e.quasi.degree == 3);
  for (long t = 1; t <= 4; ++t) CHECK(e.quasi.evaluate(t) == brute_force_sum(dilate(p, t), h));
}

TEST_CASE("huge periods hit the cap") {
  std::vector<QVector> tri{{Rational(1, 1009), 0}, {1, Rational(1, 1013)}, {0, Rational(1, 1019)}};
  Polytope p = build_polytope(RationalSpace::standard(2), tri);
  CHECK_THROWS_AS(ehrhart_quasipoly(p, Polynomial::constant(2, 1)), CapExceeded);
}
