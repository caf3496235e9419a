// SPDX-License-Identifier: Apache-2.0
//
// Cones in intrinsic coordinates: the lattice is Z^k and the scalar product is
// given by a Gram matrix. Every engine routine works on this representation;
// the public AffineCone/Polytope types convert at the boundary.
#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "emlattice/exactlin.hpp"

namespace emlattice::detail {

struct DDResult {
  std::vector<QVector> lineality;
  std::vector<QVector> rays;  // primitive integral
};

// Generators of {x in Q^n : a.x >= 0 for every constraint a}.
DDResult double_description(const std::vector<QVector>& constraints, std::size_t n);

// Face lattice over a finite element set (rays of a cone, vertices of a
// polytope). Faces are sorted element-index lists; face 0 is the top face.
struct FaceLattice {
  std::vector<std::vector<std::size_t>> elements;
  std::vector<int> dims;
  std::vector<std::vector<std::size_t>> children;  // faces of one dimension less
  std::vector<std::vector<std::size_t>> parents;   // faces of one dimension more
  std::size_t size() const { return elements.size(); }
  bool contains(std::size_t face, std::size_t element) const;
};

FaceLattice build_face_lattice(std::vector<std::size_t> top, int top_dim,
                               const std::vector<std::vector<std::size_t>>& facet_sets,
                               const std::function<int(const std::vector<std::size_t>&)>& dim_of);

struct LocalCone {
  QMatrix gram;
  QVector vertex;
  std::vector<QVector> rays;  // primitive integral vectors of Z^k
  std::size_t dim() const { return gram.rows(); }
};

// Solid pointed cone structure: inward facet normals and the face lattice
// over ray indices. The rays must be the extreme rays.
struct ConeStructure {
  std::vector<QVector> normals;
  FaceLattice lattice;
};
ConeStructure cone_structure(const std::vector<QVector>& rays, std::size_t k);

struct SpanReduction {
  QMatrix basis;               // k x j, Z-basis of Z^k ∩ span(rays)
  std::vector<QVector> rays;   // coordinates in that basis
};
SpanReduction reduce_to_span(const std::vector<QVector>& rays, std::size_t k);

// Normalizes generators of a cone solid in Z^k: primitive, deduplicated, and,
// when pointed, reduced to the extreme rays. Returns false if a line is present.
bool normalize_generators(std::vector<QVector>& rays, std::size_t k);

// Pulling triangulation of a face into simplices (lists of element indices).
// `offset` is 0 for cones and 1 for polytopes; `pick` chooses the pulled
// element of a face.
std::vector<std::vector<std::size_t>> triangulate_face(
    const FaceLattice& lattice, std::size_t face, int offset,
    const std::function<std::size_t(const std::vector<std::size_t>&)>& pick);

struct Transverse {
  LocalCone cone;
  QMatrix lift;  // k' x k: eta' = lift * eta
};
Transverse transverse(const LocalCone& a, const FaceLattice& lattice, std::size_t face);

struct BoxPoint {
  QVector point;
  QVector lambda;  // coordinates of point - s in the generators
};
// Lattice points of s + sum I_j g_j with I_j = [0,1[ or ]0,1] when open[j].
std::vector<BoxPoint> box_points_local(const QVector& s, const std::vector<QVector>& gens,
                                       const std::vector<bool>& open);

struct SignedBasis {
  int sign;
  std::vector<QVector> rays;
};
// Signed decomposition of a simplicial cone of Z^k into unimodular cones,
// modulo lower-dimensional cones.
std::vector<SignedBasis> barvinok_simplicial(const std::vector<QVector>& gens);
// Signed decomposition of a solid pointed cone into unimodular cones modulo
// cones containing lines (polar triangulation, Barvinok, polar back).
std::vector<SignedBasis> unimodular_decomposition(const std::vector<QVector>& rays,
                                                  std::size_t k);

// Relative volume of the simplicial cone piece spanned by `rays` in the lattice
// Z^k ∩ span(rays).
Rational relative_volume(const std::vector<QVector>& rays, std::size_t k);

QVector lex_generic_point(const std::vector<QVector>& rays, std::size_t k, unsigned salt);

}  // namespace emlattice::detail
