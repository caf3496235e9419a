// SPDX-License-Identifier: Apache-2.0
#include "emlattice/mu.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "emlattice/bernoulli.hpp"
#include "emlattice/errors.hpp"
#include "emlattice/parallel.hpp"

namespace emlattice {

namespace {

TruncSeries lift_to_space(const TruncSeries& s, const RationalSpace& space) {
  if (space.is_standard()) return s;
  return substitute_linear(s, space.basis().transpose());
}

Rational sawtooth(const Rational& a) { return a - Rational(floor_of(a)) - Rational(1, 2); }

// [[t]] = ceil(t) - t.
Rational upper_gap(const Rational& t) { return Rational(ceil_of(t)) - t; }

// -b(n+1, t)/(n+1)! for n = 0..order: the series of e^{tx}/(1 - e^x) + 1/x.
std::vector<Rational> half_line_coefficients(const Rational& t, int order) {
  std::vector<Rational> bt = bernoulli_taylor(t, order + 1);
  std::vector<Rational> c(static_cast<std::size_t>(order) + 1);
  for (int n = 0; n <= order; ++n) c[static_cast<std::size_t>(n)] = -bt[static_cast<std::size_t>(n) + 1];
  return c;
}

bool is_standard_basis(const std::vector<QVector>& rays, std::size_t k) {
  if (rays.size() != k) return false;
  std::vector<bool> seen(k, false);
  for (const auto& r : rays) {
    std::size_t hot = k;
    for (std::size_t i = 0; i < k; ++i) {
      if (r[i] == 0) continue;
      if (r[i] != 1 || hot != k) return false;
      hot = i;
    }
    if (hot == k || seen[hot]) return false;
    seen[hot] = true;
  }
  return true;
}

Rational abs_det(const std::vector<QVector>& rays) {
  return abs(determinant(QMatrix::from_columns(rays, rays.size())));
}

struct TwoDimData {
  QVector v1, v2;
  Rational s1, s2;
  Rational c1, c2;
  Integer q;
};

TwoDimData two_dim_data(const AffineCone& a) {
  if (a.space().dim() != 2) throw DomainError("two-dimensional closed forms need a plane");
  if (!a.pointed() || !a.solid() || a.rays().size() != 2)
    throw DomainError("two-dimensional closed forms need a solid pointed cone");
  detail::LocalCone lc = a.local();
  TwoDimData d;
  d.v1 = lc.rays[0];
  d.v2 = lc.rays[1];
  Rational det = d.v1[0] * d.v2[1] - d.v1[1] * d.v2[0];
  if (det < 0) {
    std::swap(d.v1, d.v2);
    det = -det;
  }
  d.q = det.get_num();
  auto s = solve(QMatrix::from_columns(std::vector<QVector>{d.v1, d.v2}, 2), lc.vertex);
  d.s1 = (*s)[0];
  d.s2 = (*s)[1];
  const QMatrix& g = lc.gram;
  Rational g12 = dot(d.v1, g * d.v2);
  d.c1 = g12 / dot(d.v1, g * d.v1);
  d.c2 = g12 / dot(d.v2, g * d.v2);
  return d;
}

}  // namespace

// ---------------------------------------------------------------- closed forms

std::vector<Rational> mu_dim1_closed(const Rational& s, int order) {
  return half_line_coefficients(upper_gap(s), order);
}

TruncSeries mu_dim1_closed(const Rational& s, const QVector& v, int order) {
  std::vector<Rational> c = mu_dim1_closed(s, order);
  return TruncSeries::univariate_composed(c, v, order);
}

Rational dedekind_sum(const Integer& q, const Integer& p, const Integer& r) {
  if (q < 1) throw DomainError("dedekind_sum needs q >= 1");
  Integer g;
  mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
  if (g != 1) throw DomainError("dedekind_sum needs gcd(p, q) = 1");
  Rational total = 0;
  for (Integer k = 0; k < q; ++k) {
    Rational a = Rational(-(k * p + r), q);
    a.canonicalize();
    Rational b = Rational(k, q);
    b.canonicalize();
    total += sawtooth(a) * sawtooth(b);
  }
  return total - Rational(1, 4) / Rational(q);
}

Rational mu_dim2_value0(const AffineCone& a) {
  TwoDimData d = two_dim_data(a);
  // w with det(v1, w) = 1.
  Integer g, x, y;
  Integer a0 = d.v1[0].get_num(), b0 = d.v1[1].get_num();
  mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a0.get_mpz_t(), b0.get_mpz_t());
  QVector w{Rational(-y), Rational(x)};
  Rational p_rat = d.v2[0] * w[1] - d.v2[1] * w[0];
  Integer p = p_rat.get_num();
  Rational qr(d.q);
  Rational qs1 = qr * d.s1, qs2 = qr * d.s2;
  Integer r = ceil_of(qs1) + p * ceil_of(qs2);
  Rational e1 = upper_gap(qs1), e2 = upper_gap(qs2);
  Rational half(1, 2);
  auto b2_half = [](const Rational& t) -> Rational { return Rational(1, 12) - t / 2 + t * t / 2; };
  Integer pm = p % d.q;
  if (pm < 0) pm += d.q;
  Rational value = (half - e1) * (half - e2) / qr + d.c1 * b2_half(e2) / qr +
                   d.c2 * b2_half(e1) / qr;
  if (d.q > 1) value += dedekind_sum(d.q, pm, r);
  return value;
}

TruncSeries mu_dim2_unimodular_series(const AffineCone& a, int order) {
  TwoDimData d = two_dim_data(a);
  if (d.q != 1) throw DomainError("cone is not unimodular");
  Rational e1 = upper_gap(d.s1), e2 = upper_gap(d.s2);
  const QVector y1{1, 0}, y2{0, 1};
  std::vector<MeroGerm> terms;
  auto todd = [&](const Rational& lambda) {
    std::vector<Rational> c = bernoulli_taylor(lambda, order + 2);
    for (auto& x : c) x = -x;
    return c;
  };
  {
    std::vector<Rational> c1 = todd(e1), c2 = todd(e2);
    TruncSeries num = multiply(TruncSeries::univariate_composed(c1, y1, order + 2),
                               TruncSeries::univariate_composed(c2, y2, order + 2), order + 2);
    terms.emplace_back(std::move(num), std::vector<QVector>{y1, y2});
  }
  terms.emplace_back(
      TruncSeries::univariate_composed(half_line_coefficients(e2, order + 1), QVector{-d.c1, 1},
                                       order + 1),
      std::vector<QVector>{y1});
  terms.emplace_back(
      TruncSeries::univariate_composed(half_line_coefficients(e1, order + 1), QVector{1, -d.c2},
                                       order + 1),
      std::vector<QVector>{y2});
  terms.emplace_back(TruncSeries::constant(2, order + 2, -1), std::vector<QVector>{y1, y2});
  TruncSeries in_y = to_analytic(germ_sum(terms, 2, order)).truncated(order);
  QMatrix vt = QMatrix::from_columns(std::vector<QVector>{d.v1, d.v2}, 2).transpose();
  return lift_to_space(substitute_linear(in_y, vt), a.space());
}

// ---------------------------------------------------------------- recursion

std::string mu_cache_key(const detail::LocalCone& a, MuStrategy strategy) {
  std::ostringstream os;
  const std::size_t k = a.dim();
  os << k << '|';
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) os << to_string(a.gram(i, j)) << ',';
  os << '|';
  std::vector<QVector> rays = a.rays;
  std::sort(rays.begin(), rays.end());
  for (const auto& r : rays) {
    for (const auto& x : r) os << to_string(x) << ',';
    os << ';';
  }
  os << '|';
  for (const auto& x : a.vertex) os << to_string(frac_of(x)) << ',';
  os << '|' << static_cast<int>(strategy);
  return os.str();
}

namespace detail {

TruncSeries mu_recursive(const LocalCone& a, int order, const MuOptions& options) {
  const std::size_t k = a.dim();
  const int kk = static_cast<int>(k);
  ConeStructure cs = cone_structure(a.rays, k);
  const FaceLattice& fl = cs.lattice;

  std::vector<std::size_t> faces;
  for (std::size_t f = 0; f < fl.size(); ++f)
    if (fl.dims[f] >= 1) faces.push_back(f);

  std::vector<TruncSeries> transverse_mu = parallel_map<TruncSeries>(
      faces.size(), [&](std::size_t i) {
        const std::size_t f = faces[i];
        const int sub_order = order + fl.dims[f];
        if (f == 0) return TruncSeries::constant(kk, sub_order, 1);
        Transverse t = transverse(a, fl, f);
        return substitute_linear(mu_local(t.cone, sub_order, options), t.lift);
      });

  std::vector<MeroGerm> terms;
  terms.push_back(s_local(a, order, options.s_strategy, true));
  auto pick = [&](const std::vector<std::size_t>& el) {
    return *std::min_element(el.begin(), el.end(),
                             [&](std::size_t x, std::size_t y) { return a.rays[x] < a.rays[y]; });
  };
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const std::size_t f = faces[i];
    const int j = fl.dims[f];
    for (const auto& simplex : triangulate_face(fl, f, 0, pick)) {
      std::vector<QVector> piece;
      for (auto e : simplex) piece.push_back(a.rays[e]);
      Rational c = relative_volume(piece, k);
      if (j % 2 == 0) c = -c;
      terms.emplace_back(transverse_mu[i] * c, piece);
    }
  }
  return to_analytic(germ_sum(terms, kk, order)).truncated(order);
}

TruncSeries mu_unimodular(const LocalCone& a, int order, const MuOptions& options) {
  const std::size_t k = a.dim();
  if (is_standard_basis(a.rays, k)) return mu_recursive(a, order, options);
  QMatrix v = QMatrix::from_columns(a.rays, k);
  LocalCone orthant;
  orthant.gram = v.transpose() * a.gram * v;
  orthant.vertex = inverse(v) * a.vertex;
  for (std::size_t i = 0; i < k; ++i) {
    QVector e(k);
    e[k - 1 - i] = 1;
    orthant.rays.push_back(std::move(e));
  }
  return substitute_linear(mu_local(orthant, order, options), v.transpose());
}

namespace {

TruncSeries mu_decomposition(const LocalCone& a, int order, const MuOptions& options) {
  const std::size_t k = a.dim();
  std::vector<SignedBasis> pieces = unimodular_decomposition(a.rays, k);
  std::vector<TruncSeries> values = parallel_map<TruncSeries>(pieces.size(), [&](std::size_t i) {
    LocalCone piece{a.gram, a.vertex, pieces[i].rays};
    std::sort(piece.rays.begin(), piece.rays.end());
    return mu_local(piece, order, options);
  });
  TruncSeries total(static_cast<int>(k), order);
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (pieces[i].sign > 0)
      total += values[i];
    else
      total -= values[i];
  }
  return total;
}

}  // namespace

TruncSeries mu_local(const LocalCone& input, int order, const MuOptions& options) {
  if (order < 0) throw DomainError("negative order");
  const std::size_t k = input.dim();
  const int kk = static_cast<int>(k);
  if (k == 0) return TruncSeries::constant(0, order, 1);

  std::vector<QVector> rays;
  for (const auto& r : input.rays)
    if (!is_zero(r)) rays.push_back(primitive_integer(r));
  if (rays.empty())
    return TruncSeries::constant(kk, order, is_integral(input.vertex) ? 1 : 0);

  if (rank(rays, k) < k) {
    QMatrix dirs = QMatrix::from_columns(rays, k);
    auto z = integer_point_in_affine_span(input.vertex, dirs);
    if (!z) return TruncSeries(kk, order);
    SpanReduction sr = reduce_to_span(rays, k);
    LocalCone reduced;
    reduced.gram = sr.basis.transpose() * input.gram * sr.basis;
    auto c = solve(sr.basis, sub(input.vertex, *z));
    if (!c) throw Error("lattice point outside the affine span");
    reduced.vertex = *c;
    reduced.rays = sr.rays;
    return substitute_linear(mu_local(reduced, order, options), sr.basis.transpose());
  }

  if (!normalize_generators(rays, k)) return TruncSeries(kk, order);
  std::sort(rays.begin(), rays.end());
  LocalCone a{input.gram, input.vertex, rays};
  if (options.canonical_vertex)
    for (auto& x : a.vertex) x = frac_of(x);

  std::string key;
  if (options.cache && options.canonical_vertex) {
    key = mu_cache_key(a, options.strategy);
    if (auto hit = options.cache->lookup(key, order)) return *hit;
  }

  TruncSeries value;
  const bool unimodular = rays.size() == k && abs_det(rays) == 1;
  switch (options.strategy) {
    case MuStrategy::Recursion:
      value = mu_recursive(a, order, options);
      break;
    case MuStrategy::Decomposition:
    case MuStrategy::Auto:
      value = unimodular ? mu_unimodular(a, order, options) : mu_decomposition(a, order, options);
      break;
  }
  if (!key.empty()) options.cache->insert(key, value);
  return value;
}

}  // namespace detail

TruncSeries mu_cone(const AffineCone& a, int order, const MuOptions& options) {
  const int d = static_cast<int>(a.space().ambient_dim());
  if (!a.pointed()) return TruncSeries(d, order);
  return lift_to_space(detail::mu_local(a.local(), order, options), a.space());
}

TruncSeries mu_star(const RationalSpace& space, const std::vector<QVector>& sigma,
                    const QVector& s, int order, const MuOptions& options) {
  const std::size_t k = space.dim();
  const int d = static_cast<int>(space.ambient_dim());
  QMatrix bt = space.basis().transpose();
  std::vector<QVector> local_sigma;
  for (const auto& g : sigma) {
    QVector l = bt * g;
    if (!is_zero(l)) local_sigma.push_back(std::move(l));
  }
  if (local_sigma.empty()) return TruncSeries::constant(d, order, 1);
  detail::DDResult dual = detail::double_description(local_sigma, k);
  QVector s_local = space.coordinates(s);
  TruncSeries value;
  if (rank(dual.lineality, k) == k) return TruncSeries::constant(d, order, 1);
  if (dual.lineality.empty()) {
    detail::LocalCone c{space.gram(), s_local, dual.rays};
    value = detail::mu_local(c, order, options);
  } else {
    QMatrix l = QMatrix::from_columns(dual.lineality, k);
    RationalSpace local_space(Lattice::standard(k), ScalarProduct(space.gram()));
    QMatrix p = orthogonal_projection(local_space, l);
    RationalSpace w = quotient_lattice(local_space, l);
    detail::LocalCone c;
    c.gram = w.gram();
    c.vertex = w.coordinates(p * s_local);
    for (const auto& r : dual.rays) {
      QVector pr = w.coordinates(p * r);
      if (!is_zero(pr)) c.rays.push_back(primitive_integer(pr));
    }
    value = substitute_linear(detail::mu_local(c, order, options), w.basis().transpose());
  }
  return lift_to_space(value, space);
}

}  // namespace emlattice
