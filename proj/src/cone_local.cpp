// SPDX-License-Identifier: Apache-2.0
#include "emlattice/cone_local.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <set>
#include <utility>

#include "emlattice/errors.hpp"

namespace emlattice::detail {

// ---------------------------------------------------------------- double description

DDResult double_description(const std::vector<QVector>& constraints, std::size_t n) {
  std::vector<QVector> lin;
  for (std::size_t i = 0; i < n; ++i) {
    QVector e(n);
    e[i] = 1;
    lin.push_back(std::move(e));
  }
  std::vector<QVector> rays;
  std::vector<QVector> processed;

  for (const QVector& a : constraints) {
    if (a.size() != n) throw DomainError("constraint has the wrong length");
    if (is_zero(a)) continue;
    std::size_t pick = lin.size();
    for (std::size_t i = 0; i < lin.size(); ++i)
      if (dot(a, lin[i]) != 0) {
        pick = i;
        break;
      }
    if (pick < lin.size()) {
      QVector l = lin[pick];
      Rational al = dot(a, l);
      if (al < 0) {
        l = scale(l, -1);
        al = -al;
      }
      lin.erase(lin.begin() + static_cast<std::ptrdiff_t>(pick));
      for (auto& m : lin) {
        Rational am = dot(a, m);
        if (am != 0) m = sub(m, scale(l, am / al));
      }
      for (auto& r : rays) {
        Rational ar = dot(a, r);
        if (ar != 0) r = primitive_integer(sub(r, scale(l, ar / al)));
      }
      rays.push_back(primitive_integer(l));
      processed.push_back(a);
      continue;
    }

    std::vector<Rational> val(rays.size());
    std::vector<std::size_t> pos, neg;
    std::vector<QVector> next;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      val[i] = dot(a, rays[i]);
      if (val[i] > 0) pos.push_back(i);
      if (val[i] < 0) neg.push_back(i);
      if (val[i] >= 0) next.push_back(rays[i]);
    }
    const std::size_t pointed_dim = n - lin.size();
    if (pointed_dim >= 2 && !pos.empty() && !neg.empty()) {
      // Tight sets of the already-processed constraints.
      std::vector<std::vector<std::size_t>> tight(rays.size());
      for (std::size_t i = 0; i < rays.size(); ++i)
        for (std::size_t c = 0; c < processed.size(); ++c)
          if (dot(processed[c], rays[i]) == 0) tight[i].push_back(c);
      for (std::size_t p : pos)
        for (std::size_t q : neg) {
          std::vector<std::size_t> common;
          std::set_intersection(tight[p].begin(), tight[p].end(), tight[q].begin(),
                                tight[q].end(), std::back_inserter(common));
          if (common.size() + 2 < pointed_dim) continue;
          std::vector<QVector> rowsv;
          for (auto c : common) rowsv.push_back(processed[c]);
          if (rank(rowsv, n) != pointed_dim - 2) continue;
          QVector r = sub(scale(rays[q], val[p]), scale(rays[p], val[q]));
          next.push_back(primitive_integer(r));
        }
    }
    rays = std::move(next);
    processed.push_back(a);
  }
  for (auto& l : lin) l = primitive_integer(l);
  return {std::move(lin), std::move(rays)};
}

// ---------------------------------------------------------------- face lattice

bool FaceLattice::contains(std::size_t face, std::size_t element) const {
  return std::binary_search(elements[face].begin(), elements[face].end(), element);
}

FaceLattice build_face_lattice(std::vector<std::size_t> top, int top_dim,
                               const std::vector<std::vector<std::size_t>>& facet_sets,
                               const std::function<int(const std::vector<std::size_t>&)>& dim_of) {
  FaceLattice fl;
  std::map<std::vector<std::size_t>, std::size_t> index;
  std::sort(top.begin(), top.end());
  fl.elements.push_back(top);
  fl.dims.push_back(top_dim);
  fl.children.emplace_back();
  index.emplace(top, 0);
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    std::size_t f = queue.front();
    queue.pop_front();
    if (fl.dims[f] <= 0) continue;
    for (const auto& s : facet_sets) {
      std::vector<std::size_t> g;
      std::set_intersection(fl.elements[f].begin(), fl.elements[f].end(), s.begin(), s.end(),
                            std::back_inserter(g));
      if (g.size() == fl.elements[f].size()) continue;
      auto it = index.find(g);
      std::size_t gi;
      if (it == index.end()) {
        int d = dim_of(g);
        if (d != fl.dims[f] - 1) continue;
        gi = fl.elements.size();
        index.emplace(g, gi);
        fl.elements.push_back(g);
        fl.dims.push_back(d);
        fl.children.emplace_back();
        queue.push_back(gi);
      } else {
        gi = it->second;
        if (fl.dims[gi] != fl.dims[f] - 1) continue;
      }
      auto& ch = fl.children[f];
      if (std::find(ch.begin(), ch.end(), gi) == ch.end()) ch.push_back(gi);
    }
  }
  fl.parents.assign(fl.size(), {});
  for (std::size_t f = 0; f < fl.size(); ++f) {
    std::sort(fl.children[f].begin(), fl.children[f].end());
    for (auto c : fl.children[f]) fl.parents[c].push_back(f);
  }
  return fl;
}

// ---------------------------------------------------------------- cones

ConeStructure cone_structure(const std::vector<QVector>& rays, std::size_t k) {
  DDResult dual = double_description(rays, k);
  if (!dual.lineality.empty()) throw DomainError("cone is not solid");
  ConeStructure cs;
  cs.normals = dual.rays;
  std::sort(cs.normals.begin(), cs.normals.end());
  std::vector<std::vector<std::size_t>> facet_sets;
  for (const auto& nrm : cs.normals) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < rays.size(); ++i)
      if (dot(nrm, rays[i]) == 0) s.push_back(i);
    facet_sets.push_back(std::move(s));
  }
  std::vector<std::size_t> top(rays.size());
  for (std::size_t i = 0; i < top.size(); ++i) top[i] = i;
  cs.lattice = build_face_lattice(top, static_cast<int>(k), facet_sets,
                                  [&](const std::vector<std::size_t>& set) {
                                    std::vector<QVector> v;
                                    for (auto i : set) v.push_back(rays[i]);
                                    return static_cast<int>(rank(v, k));
                                  });
  return cs;
}

SpanReduction reduce_to_span(const std::vector<QVector>& rays, std::size_t k) {
  QMatrix dirs = QMatrix::from_columns(rays, k);
  SpanReduction sr{saturated_sublattice(dirs), {}};
  for (const auto& r : rays) {
    auto c = solve(sr.basis, r);
    if (!c) throw DomainError("ray outside its own span");
    sr.rays.push_back(*c);
  }
  return sr;
}

bool normalize_generators(std::vector<QVector>& rays, std::size_t k) {
  std::vector<QVector> prim;
  for (const auto& r : rays) {
    if (is_zero(r)) continue;
    QVector p = primitive_integer(r);
    if (std::find(prim.begin(), prim.end(), p) == prim.end()) prim.push_back(std::move(p));
  }
  rays = prim;
  if (rays.empty()) return true;
  DDResult dual = double_description(rays, k);
  if (rank(dual.rays, k) < k || !dual.lineality.empty()) {
    if (!dual.lineality.empty()) throw DomainError("generators are not solid");
    return false;
  }
  std::vector<QVector> extreme;
  for (const auto& r : rays) {
    std::vector<QVector> tight;
    for (const auto& nrm : dual.rays)
      if (dot(nrm, r) == 0) tight.push_back(nrm);
    if (rank(tight, k) + 1 == k) extreme.push_back(r);
  }
  rays = std::move(extreme);
  return true;
}

std::vector<std::vector<std::size_t>> triangulate_face(
    const FaceLattice& lattice, std::size_t face, int offset,
    const std::function<std::size_t(const std::vector<std::size_t>&)>& pick) {
  const auto& el = lattice.elements[face];
  if (static_cast<int>(el.size()) == lattice.dims[face] + offset) return {el};
  std::size_t p = pick(el);
  std::vector<std::vector<std::size_t>> out;
  for (auto c : lattice.children[face]) {
    if (lattice.contains(c, p)) continue;
    for (auto simplex : triangulate_face(lattice, c, offset, pick)) {
      simplex.push_back(p);
      std::sort(simplex.begin(), simplex.end());
      out.push_back(std::move(simplex));
    }
  }
  return out;
}

Transverse transverse(const LocalCone& a, const FaceLattice& lattice, std::size_t face) {
  const std::size_t k = a.dim();
  std::vector<QVector> frays;
  for (auto i : lattice.elements[face]) frays.push_back(a.rays[i]);
  QMatrix fm = QMatrix::from_columns(frays, k);
  std::vector<QVector> basis_cols;
  for (auto j : independent_columns(fm)) basis_cols.push_back(frays[j]);
  QMatrix l = QMatrix::from_columns(basis_cols, k);
  RationalSpace space(Lattice::standard(k), ScalarProduct(a.gram));
  QMatrix p = orthogonal_projection(space, l);
  RationalSpace w = quotient_lattice(space, l);
  Transverse t;
  t.cone.gram = w.gram();
  t.cone.vertex = w.coordinates(p * a.vertex);
  for (auto g : lattice.parents[face]) {
    for (auto i : lattice.elements[g]) {
      if (lattice.contains(face, i)) continue;
      t.cone.rays.push_back(primitive_integer(w.coordinates(p * a.rays[i])));
      break;
    }
  }
  std::sort(t.cone.rays.begin(), t.cone.rays.end());
  t.lift = w.basis().transpose();
  return t;
}

// ---------------------------------------------------------------- box points

std::vector<BoxPoint> box_points_local(const QVector& s, const std::vector<QVector>& gens,
                                       const std::vector<bool>& open) {
  const std::size_t k = s.size();
  if (gens.size() != k) throw DomainError("box needs a basis of generators");
  QMatrix v = QMatrix::from_columns(gens, k);
  if (!v.is_integral()) throw DomainError("box generators must be lattice vectors");
  QMatrix vinv = inverse(v);
  HermiteResult hr = hermite_normal_form(v);
  std::vector<Integer> sizes(k);
  for (std::size_t i = 0; i < k; ++i) sizes[i] = hr.h(i, i).get_num();
  std::vector<BoxPoint> out;
  std::vector<Integer> x(k, 0);
  while (true) {
    QVector xv(k);
    for (std::size_t i = 0; i < k; ++i) xv[i] = x[i];
    QVector lam = vinv * sub(xv, s);
    for (std::size_t i = 0; i < k; ++i) {
      if (open.size() > i && open[i])
        lam[i] = lam[i] - Rational(ceil_of(lam[i])) + 1;
      else
        lam[i] = frac_of(lam[i]);
    }
    out.push_back({add(s, v * lam), lam});
    std::size_t pos = 0;
    while (pos < k) {
      if (++x[pos] < sizes[pos]) break;
      x[pos] = 0;
      ++pos;
    }
    if (pos == k) break;
  }
  std::sort(out.begin(), out.end(),
            [](const BoxPoint& a, const BoxPoint& b) { return a.point < b.point; });
  return out;
}

// ---------------------------------------------------------------- Barvinok

namespace {

Integer abs_det(const std::vector<QVector>& cols) {
  Rational d = determinant(QMatrix::from_columns(cols, cols.size()));
  return Rational(abs(d)).get_num();
}

// Nonzero lambda with U lambda integral and |lambda|_inf < 1, oriented so that
// some coordinate is positive.
QVector short_lambda(const std::vector<QVector>& u) {
  const std::size_t k = u.size();
  QMatrix uinv = inverse(QMatrix::from_columns(u, k));
  QMatrix red = lll_columns(uinv, QMatrix::identity(k));
  auto norm_inf = [](const QVector& v) {
    Rational m;
    for (const auto& x : v) m = std::max(m, Rational(abs(x)));
    return m;
  };
  QVector best;
  Rational best_norm = 1;
  for (std::size_t j = 0; j < k; ++j) {
    QVector c = red.column(j);
    Rational nrm = norm_inf(c);
    if (nrm < best_norm) {
      best_norm = nrm;
      best = c;
    }
  }
  for (int bound = 1; best.empty() || bound <= 2; ++bound) {
    if (bound > 64) throw Error("short vector search failed");
    std::vector<int> t(k, -bound);
    while (true) {
      bool nonzero = std::any_of(t.begin(), t.end(), [](int x) { return x != 0; });
      if (nonzero) {
        QVector c(k);
        for (std::size_t j = 0; j < k; ++j)
          if (t[j] != 0) c = add(c, scale(red.column(j), t[j]));
        Rational nrm = norm_inf(c);
        if (nrm < best_norm) {
          best_norm = nrm;
          best = c;
        }
      }
      std::size_t pos = 0;
      while (pos < k) {
        if (++t[pos] <= bound) break;
        t[pos] = -bound;
        ++pos;
      }
      if (pos == k) break;
    }
  }
  if (std::none_of(best.begin(), best.end(), [](const Rational& x) { return x > 0; }))
    best = scale(best, -1);
  return best;
}

void barvinok_rec(const std::vector<QVector>& u, int sign, std::vector<SignedBasis>& out) {
  if (abs_det(u) == 1) {
    out.push_back({sign, u});
    return;
  }
  QVector lam = short_lambda(u);
  QVector w = QMatrix::from_columns(u, u.size()) * lam;
  w = primitive_integer(w);
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (lam[i] == 0) continue;
    std::vector<QVector> ui = u;
    ui[i] = w;
    barvinok_rec(ui, sign * sgn(lam[i]), out);
  }
}

std::vector<QVector> polar_basis(const std::vector<QVector>& cols) {
  const std::size_t k = cols.size();
  QMatrix inv_t = inverse(QMatrix::from_columns(cols, k)).transpose();
  std::vector<QVector> out = inv_t.columns();
  for (auto& v : out) v = primitive_integer(v);
  return out;
}

}  // namespace

std::vector<SignedBasis> barvinok_simplicial(const std::vector<QVector>& gens) {
  const std::size_t k = gens.size();
  if (k == 0) return {{1, {}}};
  if (rank(gens, k) != k) throw DomainError("Barvinok input is not simplicial");
  std::vector<QVector> dual = polar_basis(gens);
  std::vector<SignedBasis> pieces;
  barvinok_rec(dual, 1, pieces);
  for (auto& p : pieces) p.rays = polar_basis(p.rays);
  return pieces;
}

std::vector<SignedBasis> unimodular_decomposition(const std::vector<QVector>& rays,
                                                  std::size_t k) {
  if (rays.size() == k && abs_det(rays) == 1) return {{1, rays}};
  ConeStructure primal = cone_structure(rays, k);
  std::vector<QVector> normals = primal.normals;
  ConeStructure dual = cone_structure(normals, k);
  auto pick = [&](const std::vector<std::size_t>& el) {
    return *std::min_element(el.begin(), el.end(), [&](std::size_t a, std::size_t b) {
      return normals[a] < normals[b];
    });
  };
  std::vector<SignedBasis> out;
  for (const auto& simplex : triangulate_face(dual.lattice, 0, 0, pick)) {
    std::vector<QVector> cols;
    for (auto i : simplex) cols.push_back(normals[i]);
    std::vector<SignedBasis> pieces;
    barvinok_rec(cols, 1, pieces);
    for (auto& p : pieces) out.push_back({p.sign, polar_basis(p.rays)});
  }
  return out;
}

Rational relative_volume(const std::vector<QVector>& rays, std::size_t k) {
  if (rays.empty()) return 1;
  SpanReduction sr = reduce_to_span(rays, k);
  if (sr.rays.size() != sr.basis.cols()) throw DomainError("volume of a non-simplicial piece");
  return abs(determinant(QMatrix::from_columns(sr.rays, sr.basis.cols())));
}

QVector lex_generic_point(const std::vector<QVector>& rays, std::size_t k, unsigned salt) {
  std::mt19937 rng(0x5eed1234u + salt);
  std::uniform_int_distribution<int> dist(1, 997);
  QVector y(k);
  for (const auto& r : rays) y = add(y, scale(r, Rational(1000 + dist(rng), 1009)));
  return y;
}

}  // namespace emlattice::detail
