// SPDX-License-Identifier: Apache-2.0
#include "emlattice/genfun.hpp"

#include <algorithm>

#include "emlattice/bernoulli.hpp"
#include "emlattice/errors.hpp"
#include "emlattice/parallel.hpp"

namespace emlattice {

namespace detail {

namespace {

MeroGerm lift_to_space(const MeroGerm& g, const RationalSpace& space) {
  if (space.is_standard()) return g;
  return substitute_linear(g, space.basis().transpose());
}

// -sum_n b(n, lambda)/n! t^n, the numerator of e^{lambda t}/(1 - e^t) over t.
std::vector<Rational> todd_factor(const Rational& lambda, int order) {
  std::vector<Rational> c = bernoulli_taylor(lambda, order);
  for (auto& x : c) x = -x;
  return c;
}

// Numerator of sum over box points of prod_i e^{lambda_i <eta,v_i>}/(1 - e^{<eta,v_i>}),
// taken over the denominator prod_i <eta, v_i>.
TruncSeries simplicial_numerator(const std::vector<QVector>& rays,
                                 const std::vector<QVector>& lambdas, int order) {
  const int k = static_cast<int>(rays.empty() ? 0 : rays.front().size());
  TruncSeries total(k, order);
  for (const auto& lam : lambdas) {
    TruncSeries prod = TruncSeries::constant(k, order, 1);
    for (std::size_t i = 0; i < rays.size(); ++i) {
      std::vector<Rational> c = todd_factor(lam[i], order);
      prod = multiply(prod, TruncSeries::univariate_composed(c, rays[i], order), order);
    }
    total += prod;
  }
  return total;
}

struct SolidCone {
  QVector vertex;
  std::vector<QVector> rays;
};

// Reduces a cone to its span. Returns false when the span has no lattice
// point (S vanishes). `shift` is the lattice point subtracted from the vertex.
struct Reduced {
  LocalCone cone;
  QMatrix basis;  // k x j
  QVector shift;
};

std::optional<Reduced> reduce_cone(const LocalCone& a, bool need_lattice_point) {
  const std::size_t k = a.dim();
  QMatrix dirs = QMatrix::from_columns(a.rays, k);
  Reduced r;
  if (need_lattice_point) {
    auto z = integer_point_in_affine_span(a.vertex, dirs);
    if (!z) return std::nullopt;
    r.shift = *z;
  } else {
    r.shift = QVector(k);
  }
  SpanReduction sr = reduce_to_span(a.rays, k);
  r.basis = sr.basis;
  r.cone.gram = sr.basis.transpose() * a.gram * sr.basis;
  QVector rel = sub(a.vertex, r.shift);
  if (need_lattice_point) {
    auto c = solve(sr.basis, rel);
    if (!c) throw Error("lattice point not in the affine span");
    r.cone.vertex = *c;
  } else {
    r.cone.vertex = QVector(sr.basis.cols());
  }
  r.cone.rays = sr.rays;
  return r;
}

MeroGerm exp_factor(const MeroGerm& g, const QVector& s) {
  if (is_zero(s)) return g;
  TruncSeries e = TruncSeries::exp_linear(s, g.numerator().order());
  return MeroGerm(multiply(g.numerator(), e, g.numerator().order()), g.denominator());
}

long total_index(const std::vector<std::vector<QVector>>& pieces) {
  Integer total = 0;
  for (const auto& p : pieces)
    total += Rational(abs(determinant(QMatrix::from_columns(p, p.size())))).get_num();
  return total.fits_slong_p() ? total.get_si() : kDirectIndexLimit + 1;
}

std::vector<std::vector<QVector>> simplicial_pieces(const std::vector<QVector>& rays,
                                                    std::size_t k) {
  if (rays.size() == k) return {rays};
  ConeStructure cs = cone_structure(rays, k);
  auto pick = [&](const std::vector<std::size_t>& el) {
    return *std::min_element(el.begin(), el.end(),
                             [&](std::size_t x, std::size_t y) { return rays[x] < rays[y]; });
  };
  std::vector<std::vector<QVector>> out;
  for (const auto& simplex : triangulate_face(cs.lattice, 0, 0, pick)) {
    std::vector<QVector> v;
    for (auto i : simplex) v.push_back(rays[i]);
    out.push_back(std::move(v));
  }
  return out;
}

MeroGerm s_direct(const LocalCone& a, const std::vector<std::vector<QVector>>& pieces,
                  int order) {
  const std::size_t k = a.dim();
  const int num_order = order + static_cast<int>(k);
  for (unsigned salt = 0;; ++salt) {
    if (salt > 64) throw Error("no generic point found for the half-open decomposition");
    QVector y = lex_generic_point(a.rays, k, salt);
    std::vector<std::vector<bool>> open(pieces.size());
    bool generic = true;
    for (std::size_t p = 0; p < pieces.size() && generic; ++p) {
      QMatrix inv = inverse(QMatrix::from_columns(pieces[p], k));
      for (std::size_t j = 0; j < k; ++j) {
        Rational by = dot(inv.row(j), y);
        if (by == 0) {
          generic = false;
          break;
        }
        open[p].push_back(by < 0);
      }
    }
    if (!generic) continue;
    std::vector<MeroGerm> terms(pieces.size());
    parallel_for(pieces.size(), [&](std::size_t p) {
      std::vector<QVector> lambdas;
      for (const auto& bp : box_points_local(a.vertex, pieces[p], open[p]))
        lambdas.push_back(bp.lambda);
      terms[p] = MeroGerm(simplicial_numerator(pieces[p], lambdas, num_order), pieces[p]);
    });
    return germ_sum(terms, static_cast<int>(k), order);
  }
}

MeroGerm s_barvinok(const LocalCone& a, int order) {
  const std::size_t k = a.dim();
  const int num_order = order + static_cast<int>(k);
  std::vector<SignedBasis> pieces = unimodular_decomposition(a.rays, k);
  std::vector<MeroGerm> terms(pieces.size());
  parallel_for(pieces.size(), [&](std::size_t p) {
    std::vector<QVector> lambdas;
    for (const auto& bp : box_points_local(a.vertex, pieces[p].rays, {}))
      lambdas.push_back(bp.lambda);
    TruncSeries num = simplicial_numerator(pieces[p].rays, lambdas, num_order);
    if (pieces[p].sign < 0) num = -num;
    terms[p] = MeroGerm(std::move(num), pieces[p].rays);
  });
  return germ_sum(terms, static_cast<int>(k), order);
}

}  // namespace

MeroGerm s_local(const LocalCone& a, int order, SStrategy strategy, bool relative) {
  const std::size_t k = a.dim();
  const int kk = static_cast<int>(k);
  if (a.rays.empty()) {
    if (!is_integral(a.vertex)) return MeroGerm::zero(kk, order);
    TruncSeries one = TruncSeries::constant(kk, order, 1);
    return relative ? MeroGerm::analytic(one) : MeroGerm::analytic(TruncSeries::exp_linear(a.vertex, order));
  }
  if (rank(a.rays, k) < k) {
    auto red = reduce_cone(a, true);
    if (!red) return MeroGerm::zero(kk, order);
    MeroGerm sub = s_local(red->cone, order, strategy, true);
    MeroGerm lifted = substitute_linear(sub, red->basis.transpose());
    return relative ? lifted : exp_factor(lifted, a.vertex);
  }
  std::vector<QVector> rays = a.rays;
  if (!normalize_generators(rays, k)) return MeroGerm::zero(kk, order);
  LocalCone c{a.gram, a.vertex, rays};
  MeroGerm g;
  if (strategy == SStrategy::Barvinok) {
    g = s_barvinok(c, order);
  } else {
    auto pieces = simplicial_pieces(rays, k);
    if (strategy == SStrategy::Direct || total_index(pieces) <= kDirectIndexLimit)
      g = s_direct(c, pieces, order);
    else
      g = s_barvinok(c, order);
  }
  return relative ? g : exp_factor(g, a.vertex);
}

MeroGerm i_local(const LocalCone& a, int order, bool relative) {
  const std::size_t k = a.dim();
  const int kk = static_cast<int>(k);
  if (a.rays.empty()) {
    TruncSeries one = TruncSeries::constant(kk, order, 1);
    return relative ? MeroGerm::analytic(one) : MeroGerm::analytic(TruncSeries::exp_linear(a.vertex, order));
  }
  if (rank(a.rays, k) < k) {
    auto red = reduce_cone(a, false);
    MeroGerm sub = i_local(red->cone, order, true);
    MeroGerm lifted = substitute_linear(sub, red->basis.transpose());
    return relative ? lifted : exp_factor(lifted, a.vertex);
  }
  std::vector<QVector> rays = a.rays;
  if (!normalize_generators(rays, k)) return MeroGerm::zero(kk, order);
  std::vector<MeroGerm> terms;
  const int num_order = order + kk;
  for (const auto& piece : simplicial_pieces(rays, k)) {
    Rational vol = abs(determinant(QMatrix::from_columns(piece, k)));
    if (k % 2 == 1) vol = -vol;
    terms.emplace_back(TruncSeries::constant(kk, num_order, vol), piece);
  }
  MeroGerm g = germ_sum(terms, kk, order);
  return relative ? g : exp_factor(g, a.vertex);
}

}  // namespace detail

MeroGerm i_cone(const AffineCone& a, int order) {
  if (!a.pointed()) return MeroGerm::zero(static_cast<int>(a.space().ambient_dim()), order);
  return detail::lift_to_space(detail::i_local(a.local(), order, false), a.space());
}

MeroGerm s_cone(const AffineCone& a, int order, SStrategy strategy) {
  if (!a.pointed()) return MeroGerm::zero(static_cast<int>(a.space().ambient_dim()), order);
  return detail::lift_to_space(detail::s_local(a.local(), order, strategy, false), a.space());
}

MeroGerm brion_sum_S(const Polytope& p, int order, SStrategy strategy) {
  const std::size_t nv = p.vertices().size();
  std::vector<MeroGerm> terms(nv);
  parallel_for(nv, [&](std::size_t i) { terms[i] = s_cone(tangent_cone(p, i), order, strategy); });
  return germ_sum(terms, static_cast<int>(p.space().ambient_dim()), order);
}

}  // namespace emlattice
