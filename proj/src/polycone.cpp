// SPDX-License-Identifier: Apache-2.0
#include "emlattice/polycone.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "emlattice/errors.hpp"

namespace emlattice {

using detail::LocalCone;

// ---------------------------------------------------------------- AffineCone

AffineCone::AffineCone(RationalSpace space, QVector vertex, std::vector<QVector> generators)
    : space_(std::move(space)), vertex_(std::move(vertex)) {
  if (!space_.contains(vertex_)) throw DomainError("cone vertex outside the space");
  const std::size_t k = space_.dim();
  std::vector<QVector> local;
  for (const auto& g : generators) {
    auto c = space_.lattice().coordinates(g);
    if (!c) throw DomainError("cone generator outside the space");
    if (!is_zero(*c)) local.push_back(primitive_integer(*c));
  }
  std::sort(local.begin(), local.end());
  local.erase(std::unique(local.begin(), local.end()), local.end());
  if (!local.empty()) {
    detail::SpanReduction sr = detail::reduce_to_span(local, k);
    span_dim_ = sr.basis.cols();
    std::vector<QVector> coords = sr.rays;
    pointed_ = detail::normalize_generators(coords, span_dim_);
    if (pointed_) {
      local.clear();
      for (const auto& c : coords) local.push_back(sr.basis * c);
      std::sort(local.begin(), local.end());
    }
  }
  for (const auto& c : local) rays_.push_back(space_.point(c));
}

LocalCone AffineCone::local() const {
  LocalCone lc;
  lc.gram = space_.gram();
  lc.vertex = space_.coordinates(vertex_);
  for (const auto& r : rays_) lc.rays.push_back(space_.coordinates(r));
  return lc;
}

std::vector<FaceHandle> faces_of_cone(const AffineCone& c) {
  if (!c.pointed()) throw DomainError("face lattice of a cone with lines");
  LocalCone lc = c.local();
  const std::size_t k = lc.dim();
  std::vector<FaceHandle> out;
  if (lc.rays.empty()) {
    FaceHandle f;
    f.affine_basis = QMatrix(c.space().ambient_dim(), 0);
    f.span_point = c.vertex();
    out.push_back(std::move(f));
    return out;
  }
  detail::SpanReduction sr = detail::reduce_to_span(lc.rays, k);
  detail::ConeStructure cs = detail::cone_structure(sr.rays, sr.basis.cols());
  std::vector<std::size_t> idx(cs.lattice.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (cs.lattice.dims[a] != cs.lattice.dims[b]) return cs.lattice.dims[a] < cs.lattice.dims[b];
    return cs.lattice.elements[a] < cs.lattice.elements[b];
  });
  for (std::size_t pos = 0; pos < idx.size(); ++pos) {
    std::size_t i = idx[pos];
    FaceHandle f;
    f.index = pos;
    f.dim = cs.lattice.dims[i];
    f.elements = cs.lattice.elements[i];
    std::vector<QVector> cols;
    for (auto e : f.elements) cols.push_back(c.rays()[e]);
    QMatrix m = QMatrix::from_columns(cols, c.space().ambient_dim());
    std::vector<QVector> basis;
    for (auto j : independent_columns(m)) basis.push_back(cols[j]);
    f.affine_basis = QMatrix::from_columns(basis, c.space().ambient_dim());
    f.span_point = c.vertex();
    out.push_back(std::move(f));
  }
  return out;
}

// ---------------------------------------------------------------- Polytope

namespace {

int affine_rank(const std::vector<QVector>& pts, const std::vector<std::size_t>& set,
                std::size_t k) {
  if (set.empty()) return -1;
  std::vector<QVector> diffs;
  for (std::size_t i = 1; i < set.size(); ++i) diffs.push_back(sub(pts[set[i]], pts[set[0]]));
  return static_cast<int>(rank(diffs, k));
}

}  // namespace

Polytope build_polytope(const RationalSpace& space, std::span<const QVector> points) {
  if (points.empty()) throw DomainError("polytope needs at least one point");
  const std::size_t k = space.dim();
  std::vector<QVector> coords;
  for (const auto& p : points) {
    if (p.size() != space.ambient_dim()) throw DomainError("point has the wrong dimension");
    coords.push_back(space.coordinates(p));
  }
  std::sort(coords.begin(), coords.end(), [&](const QVector& a, const QVector& b) {
    return space.point(a) < space.point(b);
  });
  coords.erase(std::unique(coords.begin(), coords.end()), coords.end());

  std::vector<QVector> hom;
  for (const auto& c : coords) {
    QVector h{Rational(1)};
    h.insert(h.end(), c.begin(), c.end());
    hom.push_back(std::move(h));
  }
  detail::DDResult dd = detail::double_description(hom, k + 1);
  std::vector<QVector> facets;
  for (const auto& y : dd.rays) {
    bool tight_any = std::any_of(hom.begin(), hom.end(), [&](const QVector& h) { return dot(y, h) == 0; });
    if (tight_any) facets.push_back(y);
  }
  std::sort(facets.begin(), facets.end());

  Polytope p;
  p.space_ = space;
  std::vector<QVector> verts;
  for (const auto& h : hom) {
    std::vector<QVector> tight = dd.lineality;
    for (const auto& y : facets)
      if (dot(y, h) == 0) tight.push_back(y);
    if (rank(tight, k + 1) == k) verts.push_back(QVector(h.begin() + 1, h.end()));
  }
  std::vector<std::size_t> all(verts.size());
  std::iota(all.begin(), all.end(), 0);
  p.dim_ = affine_rank(verts, all, k);

  std::vector<std::vector<std::size_t>> facet_sets;
  for (const auto& y : facets) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < verts.size(); ++i) {
      QVector h{Rational(1)};
      h.insert(h.end(), verts[i].begin(), verts[i].end());
      if (dot(y, h) == 0) s.push_back(i);
    }
    facet_sets.push_back(std::move(s));
    QVector a(y.begin() + 1, y.end());
    p.inequalities_.push_back({scale(a, -1), y[0]});
  }
  for (const auto& l : dd.lineality) {
    QVector a(l.begin() + 1, l.end());
    p.equations_.push_back({a, -l[0]});
  }
  p.lattice_ = detail::build_face_lattice(all, p.dim_, facet_sets,
                                          [&](const std::vector<std::size_t>& s) {
                                            return affine_rank(verts, s, k);
                                          });
  for (const auto& v : verts) p.vertices_.push_back(space.point(v));

  const auto& fl = p.lattice_;
  p.order_.resize(fl.size());
  std::iota(p.order_.begin(), p.order_.end(), 0);
  std::sort(p.order_.begin(), p.order_.end(), [&](std::size_t a, std::size_t b) {
    if (fl.dims[a] != fl.dims[b]) return fl.dims[a] < fl.dims[b];
    return fl.elements[a] < fl.elements[b];
  });
  p.rank_.resize(fl.size());
  for (std::size_t pos = 0; pos < p.order_.size(); ++pos) p.rank_[p.order_[pos]] = pos;
  const std::size_t d = space.ambient_dim();
  for (std::size_t pos = 0; pos < p.order_.size(); ++pos) {
    std::size_t i = p.order_[pos];
    FaceHandle f;
    f.index = pos;
    f.dim = fl.dims[i];
    f.elements = fl.elements[i];
    const QVector& v0 = p.vertices_[f.elements.front()];
    std::vector<QVector> diffs;
    for (std::size_t j = 1; j < f.elements.size(); ++j) diffs.push_back(sub(p.vertices_[f.elements[j]], v0));
    std::vector<QVector> basis;
    if (!diffs.empty()) {
      QMatrix m = QMatrix::from_columns(diffs, d);
      for (auto j : independent_columns(m)) basis.push_back(diffs[j]);
    }
    f.affine_basis = QMatrix::from_columns(basis, d);
    f.span_point = v0;
    p.faces_.push_back(std::move(f));
  }
  return p;
}

std::vector<std::size_t> Polytope::parents(std::size_t i) const {
  std::vector<std::size_t> out;
  for (auto g : lattice_.parents[order_[i]]) out.push_back(rank_[g]);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> Polytope::children(std::size_t i) const {
  std::vector<std::size_t> out;
  for (auto g : lattice_.children[order_[i]]) out.push_back(rank_[g]);
  std::sort(out.begin(), out.end());
  return out;
}

bool Polytope::contains(const QVector& x) const {
  auto c = space_.lattice().coordinates(x);
  if (!c) return false;
  for (const auto& h : inequalities_)
    if (dot(h.normal, *c) > h.offset) return false;
  for (const auto& h : equations_)
    if (dot(h.normal, *c) != h.offset) return false;
  return true;
}

Polytope dilate(const Polytope& p, const Rational& t) {
  if (t <= 0) throw DomainError("dilation factor must be positive");
  std::vector<QVector> pts;
  for (const auto& v : p.vertices()) pts.push_back(scale(v, t));
  return build_polytope(p.space(), pts);
}

std::vector<FaceHandle> faces_of(const Polytope& p) { return p.faces(); }

AffineCone tangent_cone(const Polytope& p, std::size_t vertex_index) {
  const QVector& v = p.vertices().at(vertex_index);
  std::vector<QVector> gens;
  for (const auto& f : p.faces()) {
    if (f.dim != 1) continue;
    if (!std::binary_search(f.elements.begin(), f.elements.end(), vertex_index)) continue;
    for (auto e : f.elements)
      if (e != vertex_index) gens.push_back(sub(p.vertices()[e], v));
  }
  return AffineCone(p.space(), v, gens);
}

AffineCone transverse_cone_dilated(const Polytope& p, const FaceHandle& f, const Rational& t) {
  RationalSpace w = quotient_lattice(p.space(), f.affine_basis);
  QMatrix proj = orthogonal_projection(p.space(), f.affine_basis);
  std::vector<QVector> gens;
  for (auto g : p.parents(f.index)) {
    for (auto e : p.faces()[g].elements) {
      if (std::binary_search(f.elements.begin(), f.elements.end(), e)) continue;
      gens.push_back(proj * sub(p.vertices()[e], f.span_point));
      break;
    }
  }
  return AffineCone(w, scale(proj * f.span_point, t), gens);
}

AffineCone transverse_cone(const Polytope& p, const FaceHandle& f) {
  return transverse_cone_dilated(p, f, 1);
}

std::vector<AffineCone> triangulate_cone(const AffineCone& c) {
  if (!c.pointed()) throw DomainError("triangulation of a cone with lines");
  if (c.rays().empty()) return {c};
  LocalCone lc = c.local();
  detail::SpanReduction sr = detail::reduce_to_span(lc.rays, lc.dim());
  detail::ConeStructure cs = detail::cone_structure(sr.rays, sr.basis.cols());
  auto pick = [&](const std::vector<std::size_t>& el) { return el.front(); };
  std::vector<AffineCone> out;
  for (const auto& simplex : detail::triangulate_face(cs.lattice, 0, 0, pick)) {
    std::vector<QVector> gens;
    for (auto i : simplex) gens.push_back(c.rays()[i]);
    out.emplace_back(c.space(), c.vertex(), gens);
  }
  return out;
}

std::vector<std::vector<std::size_t>> triangulate_face(const Polytope& p, const FaceHandle& f,
                                                       bool pull_greatest) {
  auto pick = [&](const std::vector<std::size_t>& el) {
    return pull_greatest ? el.back() : el.front();
  };
  std::size_t internal = 0;
  for (std::size_t i = 0; i < p.lattice().size(); ++i)
    if (p.lattice().elements[i] == f.elements) internal = i;
  return detail::triangulate_face(p.lattice(), internal, 1, pick);
}

std::vector<QVector> box_points(const QVector& s, std::span<const QVector> gens,
                                const Lattice& lattice, const std::vector<bool>& open) {
  auto sc = lattice.coordinates(s);
  if (!sc) throw DomainError("box vertex outside the lattice span");
  std::vector<QVector> g;
  for (const auto& v : gens) {
    auto c = lattice.coordinates(v);
    if (!c || !is_integral(*c)) throw DomainError("box generators must be lattice vectors");
    g.push_back(*c);
  }
  std::vector<QVector> out;
  for (const auto& bp : detail::box_points_local(*sc, g, open))
    out.push_back(lattice.basis() * bp.point);
  std::sort(out.begin(), out.end());
  return out;
}

SignedConeList barvinok_decompose(const AffineCone& c) {
  if (!c.simplicial()) throw DomainError("Barvinok decomposition needs a simplicial cone");
  LocalCone lc = c.local();
  if (lc.rays.empty()) return {{1, c}};
  detail::SpanReduction sr = detail::reduce_to_span(lc.rays, lc.dim());
  SignedConeList out;
  for (const auto& piece : detail::barvinok_simplicial(sr.rays)) {
    std::vector<QVector> gens;
    for (const auto& r : piece.rays) gens.push_back(c.space().point(sr.basis * r));
    out.push_back({piece.sign, AffineCone(c.space(), c.vertex(), gens)});
  }
  return out;
}

std::vector<QVector> dual_cone(std::span<const QVector> generators, std::size_t dim) {
  detail::DDResult dd =
      detail::double_description(std::vector<QVector>(generators.begin(), generators.end()), dim);
  std::vector<QVector> out = dd.rays;
  for (const auto& l : dd.lineality) {
    out.push_back(l);
    out.push_back(scale(l, -1));
  }
  return out;
}

Integer face_period(const Polytope& p, const FaceHandle& f) {
  const RationalSpace& sp = p.space();
  QVector x0 = sp.coordinates(f.span_point);
  std::vector<QVector> dirs;
  for (std::size_t j = 0; j < f.affine_basis.cols(); ++j)
    dirs.push_back(sp.coordinates(f.affine_basis.column(j)));
  QMatrix dm = QMatrix::from_columns(dirs, sp.dim());
  Integer l = common_denominator(x0);
  for (Integer q = 1; q <= l; ++q) {
    if (l % q != 0) continue;
    if (integer_point_in_affine_span(scale(x0, Rational(q)), dm)) return q;
  }
  return l;
}

}  // namespace emlattice
