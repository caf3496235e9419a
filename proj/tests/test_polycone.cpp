// SPDX-License-Identifier: Apache-2.0
#include <algorithm>

#include "doctest.h"
#include "emlattice/errors.hpp"
#include "emlattice/polycone.hpp"

using namespace emlattice;

namespace {

std::vector<QVector> triangle357() {
  return {{Rational(1, 3), Rational(1, 5)}, {Rational(16, 3), Rational(1, 7)},
          {Rational(37, 5), Rational(92, 7)}};
}

const FaceHandle& face_with(const Polytope& p, std::vector<std::size_t> elems) {
  for (const auto& f : p.faces())
    if (f.elements == elems) return f;
  throw std::runtime_error("face not found");
}

}  // namespace

TEST_CASE("unit square face lattice") {
  Polytope p = build_polytope(RationalSpace::standard(2),
                              std::vector<QVector>{{0, 0}, {1, 0}, {0, 1}, {1, 1}, {Rational(1, 2), Rational(1, 2)}});
  CHECK(p.dim() == 2);
  CHECK(p.vertices().size() == 4);
  CHECK(p.faces().size() == 9);
  CHECK(p.inequalities().size() == 4);
  CHECK(p.equations().empty());
  int per_dim[3] = {0, 0, 0};
  for (const auto& f : p.faces()) ++per_dim[f.dim];
  CHECK(per_dim[0] == 4);
  CHECK(per_dim[1] == 4);
  CHECK(per_dim[2] == 1);
  CHECK(p.contains(QVector{Rational(1, 2), 1}));
  CHECK_FALSE(p.contains(QVector{Rational(3, 2), 0}));
  // Each vertex lies on two edges.
  for (std::size_t i = 0; i < 4; ++i) CHECK(p.parents(i).size() == 2);
}

TEST_CASE("lower-dimensional polytope keeps its equations") {
  Polytope seg = build_polytope(RationalSpace::standard(2), std::vector<QVector>{{0, 0}, {2, 1}});
  CHECK(seg.dim() == 1);
  CHECK(seg.equations().size() == 1);
  CHECK(seg.faces().size() == 3);
  CHECK(seg.contains(QVector{1, Rational(1, 2)}));
  CHECK_FALSE(seg.contains(QVector{1, 1}));
}

TEST_CASE("empty input is rejected") {
  CHECK_THROWS_AS(build_polytope(RationalSpace::standard(2), std::vector<QVector>{}), DomainError);
}

TEST_CASE("tangent and transverse cones of the 357 triangle") {
  Polytope p = build_polytope(RationalSpace::standard(2), triangle357());
  AffineCone t = tangent_cone(p, 0);
  CHECK(t.vertex() == p.vertices()[0]);
  CHECK(t.rays().size() == 2);
  CHECK(t.simplicial());
  CHECK(t.solid());
  // An edge has a one-dimensional transverse cone; the full face a point.
  const FaceHandle& edge = face_with(p, {0, 1});
  AffineCone e = transverse_cone(p, edge);
  CHECK(e.space().dim() == 1);
  CHECK(e.rays().size() == 1);
  const FaceHandle& full = face_with(p, {0, 1, 2});
  CHECK(transverse_cone(p, full).space().dim() == 0);
}

TEST_CASE("face periods of the 357 triangle") {
  Polytope p = build_polytope(RationalSpace::standard(2), triangle357());
  CHECK(face_period(p, face_with(p, {0})) == 15);
  CHECK(face_period(p, face_with(p, {1})) == 21);
  CHECK(face_period(p, face_with(p, {2})) == 35);
  CHECK(face_period(p, face_with(p, {0, 1})) == 3);
  CHECK(face_period(p, face_with(p, {1, 2})) == 7);
  CHECK(face_period(p, face_with(p, {0, 2})) == 5);
  CHECK(face_period(p, face_with(p, {0, 1, 2})) == 1);
}

TEST_CASE("dilation scales vertices") {
  Polytope p = build_polytope(RationalSpace::standard(2), triangle357());
  Polytope q = dilate(p, 3);
  CHECK(q.vertices()[0] == QVector{1, Rational(3, 5)});
  CHECK(q.faces().size() == p.faces().size());
}

TEST_CASE("pulling triangulations cover the face") {
  Polytope hex = build_polytope(RationalSpace::standard(2),
                                std::vector<QVector>{{0, 0}, {2, 0}, {3, 1}, {2, 2}, {0, 2}, {-1, 1}});
  const FaceHandle& full = hex.faces().back();
  auto a = triangulate_face(hex, full, true);
  auto b = triangulate_face(hex, full, false);
  CHECK(a.size() == 4);
  CHECK(b.size() == 4);
  CHECK(a != b);
}

TEST_CASE("dual cone of a simplicial cone") {
  std::vector<QVector> gens{{1, 0}, {1, 2}};
  auto dual = dual_cone(gens, 2);
  CHECK(dual.size() == 2);
  for (const auto& d : dual)
    for (const auto& g : gens) CHECK(dot(d, g) >= 0);
  // Lineality directions appear with both signs.
  auto half = dual_cone(std::vector<QVector>{{1, 0}}, 2);
  CHECK(std::find(half.begin(), half.end(), QVector{0, 1}) != half.end());
  CHECK(std::find(half.begin(), half.end(), QVector{0, -1}) != half.end());
}

TEST_CASE("Barvinok decomposition yields signed unimodular cones") {
  AffineCone c(RationalSpace::standard(2), QVector{0, 0}, {QVector{1, 0}, QVector{2, 7}});
  auto pieces = barvinok_decompose(c);
  CHECK(!pieces.empty());
  for (const auto& sc : pieces) {
    CHECK((sc.sign == 1 || sc.sign == -1));
    if (sc.cone.rays().size() == 2)
      CHECK(abs(determinant(QMatrix::from_columns(sc.cone.rays(), 2))) == 1);
  }
}

TEST_CASE("triangulating a non-simplicial cone") {
  AffineCone c(RationalSpace::standard(3), QVector{0, 0, 0},
               {QVector{1, 0, 1}, QVector{0, 1, 1}, QVector{-1, 0, 1}, QVector{0, -1, 1}});
  CHECK_FALSE(c.simplicial());
  auto parts = triangulate_cone(c);
  CHECK(parts.size() == 2);
  for (const auto& t : parts) CHECK(t.simplicial());
  CHECK(faces_of_cone(c).size() == 10);
}

TEST_CASE("cones with a line are not pointed") {
  AffineCone c(RationalSpace::standard(2), QVector{0, 0}, {QVector{1, 0}, QVector{-1, 0}, QVector{0, 1}});
  CHECK_FALSE(c.pointed());
}
