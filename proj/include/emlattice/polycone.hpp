// SPDX-License-Identifier: Apache-2.0
//
// Rational polytopes and affine cones: vertices, H-representation, face
// lattice, tangent and transverse cones, triangulations, box enumeration and
// signed unimodular decompositions.
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "emlattice/cone_local.hpp"
#include "emlattice/exactlin.hpp"

namespace emlattice {

// A face of a polytope (elements are vertex indices) or of a cone (elements
// are ray indices; the apex is the face with no rays).
struct FaceHandle {
  std::size_t index = 0;
  int dim = 0;
  std::vector<std::size_t> elements;
  QMatrix affine_basis;  // ambient columns spanning lin(f)
  QVector span_point;    // a point of the affine span
};

class AffineCone {
 public:
  AffineCone() = default;
  AffineCone(RationalSpace space, QVector vertex, std::vector<QVector> generators);

  const RationalSpace& space() const { return space_; }
  const QVector& vertex() const { return vertex_; }
  // Primitive lattice generators; the extreme rays when the cone is pointed.
  const std::vector<QVector>& rays() const { return rays_; }
  bool pointed() const { return pointed_; }
  bool solid() const { return span_dim_ == space_.dim(); }
  bool simplicial() const { return pointed_ && rays_.size() == span_dim_; }
  std::size_t span_dim() const { return span_dim_; }

  // Intrinsic form in lattice coordinates of the space.
  detail::LocalCone local() const;

 private:
  RationalSpace space_;
  QVector vertex_;
  std::vector<QVector> rays_;
  bool pointed_ = true;
  std::size_t span_dim_ = 0;
};

// normal . x <= offset, in lattice coordinates of the polytope's space.
struct Halfspace {
  QVector normal;
  Rational offset;
};

class Polytope {
 public:
  const RationalSpace& space() const { return space_; }
  int dim() const { return dim_; }
  // Sorted lexicographically.
  const std::vector<QVector>& vertices() const { return vertices_; }
  const std::vector<Halfspace>& inequalities() const { return inequalities_; }
  // Equations normal . x = offset of the affine hull.
  const std::vector<Halfspace>& equations() const { return equations_; }
  // Sorted by dimension, then lexicographically by vertex lists.
  const std::vector<FaceHandle>& faces() const { return faces_; }
  const detail::FaceLattice& lattice() const { return lattice_; }
  // Faces of one dimension more / less than faces()[i].
  std::vector<std::size_t> parents(std::size_t i) const;
  std::vector<std::size_t> children(std::size_t i) const;
  bool contains(const QVector& x) const;

 private:
  friend Polytope build_polytope(const RationalSpace&, std::span<const QVector>);
  RationalSpace space_;
  int dim_ = 0;
  std::vector<QVector> vertices_;
  std::vector<Halfspace> inequalities_;
  std::vector<Halfspace> equations_;
  std::vector<FaceHandle> faces_;
  detail::FaceLattice lattice_;     // faces in lattice-building order
  std::vector<std::size_t> order_;  // faces_[i] is lattice_ face order_[i]
  std::vector<std::size_t> rank_;   // inverse of order_
};

Polytope build_polytope(const RationalSpace& space, std::span<const QVector> points);
Polytope dilate(const Polytope& p, const Rational& t);

std::vector<FaceHandle> faces_of(const Polytope& p);
std::vector<FaceHandle> faces_of_cone(const AffineCone& c);

AffineCone tangent_cone(const Polytope& p, std::size_t vertex_index);
AffineCone transverse_cone(const Polytope& p, const FaceHandle& f);
// Same transverse cone with the vertex scaled by t.
AffineCone transverse_cone_dilated(const Polytope& p, const FaceHandle& f, const Rational& t);

std::vector<AffineCone> triangulate_cone(const AffineCone& c);
// Simplices (vertex index lists) of a pulling triangulation of a face. The
// pulled vertex of each face is its lexicographically least (or greatest).
std::vector<std::vector<std::size_t>> triangulate_face(const Polytope& p, const FaceHandle& f,
                                                       bool pull_greatest = false);

std::vector<QVector> box_points(const QVector& s, std::span<const QVector> gens,
                                const Lattice& lattice, const std::vector<bool>& open);

struct SignedCone {
  int sign;
  AffineCone cone;
};
using SignedConeList = std::vector<SignedCone>;
SignedConeList barvinok_decompose(const AffineCone& c);

// Generators of the dual cone {xi : <xi, x> >= 0 on the cone}; lineality
// directions appear with both signs.
std::vector<QVector> dual_cone(std::span<const QVector> generators, std::size_t dim);

// Smallest q >= 1 such that q * aff(f) contains a lattice point.
Integer face_period(const Polytope& p, const FaceHandle& f);

}  // namespace emlattice
