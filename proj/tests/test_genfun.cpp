// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"
#include "emlattice/genfun.hpp"
#include "oracles.hpp"

using namespace emlattice;

TEST_CASE("lattice sum of the half-line") {
  AffineCone h(RationalSpace::standard(1), QVector{0}, {QVector{1}});
  MeroGerm s = s_cone(h, 4);
  // xi / (1 - e^xi) = -(1 - xi/2 + xi^2/12 - xi^4/720 ...).
  TruncSeries t = to_analytic(multiply_by_form(s, QVector{1}));
  CHECK(t.at(0) == -1);
  CHECK(t.at(1) == Rational(1, 2));
  CHECK(t.at(2) == Rational(-1, 12));
  CHECK(t.at(3) == 0);
}

TEST_CASE("integral over the shifted orthant") {
  // int_{s + R_+^2} e^{<xi,x>} = e^{<xi,s>} / (xi1 xi2).
  QVector s{Rational(1, 2), Rational(-1, 3)};
  AffineCone a(RationalSpace::standard(2), s, {QVector{1, 0}, QVector{0, 1}});
  MeroGerm i = i_cone(a, 4);
  MeroGerm expect(TruncSeries::exp_linear(s, 4), {QVector{1, 0}, QVector{0, 1}});
  CHECK(germ_equal(i, expect));
}

TEST_CASE("direct and Barvinok sums agree on a cone of index 7") {
  AffineCone a(RationalSpace::standard(2), QVector{Rational(1, 3), Rational(2, 5)},
               {QVector{1, 0}, QVector{2, 7}});
  CHECK(germ_equal(s_cone(a, 4, SStrategy::Direct), s_cone(a, 4, SStrategy::Barvinok)));
  CHECK(germ_equal(s_cone(a, 4, SStrategy::Auto), s_cone(a, 4, SStrategy::Direct)));
}

TEST_CASE("lattice-free span gives a zero sum") {
  AffineCone a(RationalSpace::standard(2), QVector{Rational(1, 2), 0}, {QVector{0, 1}});
  CHECK(s_cone(a, 3).numerator().is_zero());
  // The integral over the same half-line does not vanish.
  CHECK_FALSE(i_cone(a, 3).numerator().is_zero());
}

TEST_CASE("Brion sum of the unit square") {
  std::vector<QVector> pts{{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  Polytope p = build_polytope(RationalSpace::standard(2), pts);
  TruncSeries got = to_analytic(brion_sum_S(p, 3));
  CHECK(got.truncated(2) == oracle::exp_sum_series(pts, 2, 2));
  CHECK(got.constant_term() == 4);
}

TEST_CASE("Brion sum of the 357 triangle counts its points") {
  std::vector<QVector> tri{{Rational(1, 3), Rational(1, 5)}, {Rational(16, 3), Rational(1, 7)},
                           {Rational(37, 5), Rational(92, 7)}};
  Polytope p = build_polytope(RationalSpace::standard(2), tri);
  TruncSeries got = to_analytic(brion_sum_S(p, 2));
  CHECK(got.constant_term() == 31);
  CHECK(got.truncated(1) == oracle::exp_sum_series(oracle::polygon_points(tri), 2, 1));
}
