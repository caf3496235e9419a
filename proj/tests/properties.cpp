// SPDX-License-Identifier: Apache-2.0
#include "properties.hpp"

#include <functional>
#include <numeric>
#include <random>
#include <sstream>

#include "emlattice/genfun.hpp"
#include "emlattice/mu.hpp"
#include "emlattice/polycone.hpp"
#include "oracles.hpp"

namespace props {

using namespace emlattice;

namespace {

std::string show(const QVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << to_string(v[i]);
  os << ')';
  return os.str();
}

std::string show_cone(const AffineCone& a) {
  std::string s = "vertex " + show(a.vertex()) + " rays";
  for (const auto& r : a.rays()) s += " " + show(r);
  return s;
}

// Runs `body` for each case; body returns an empty string on success.
SuiteResult run(const std::string& name, int cases, const std::function<std::string(int)>& body) {
  SuiteResult r;
  r.name = name;
  for (int i = 0; i < cases; ++i) {
    std::string msg;
    try {
      msg = body(i);
    } catch (const std::exception& e) {
      msg = std::string("exception: ") + e.what();
    }
    ++r.cases;
    if (!msg.empty()) {
      ++r.failures;
      if (r.first_failure.empty()) r.first_failure = "case " + std::to_string(i) + ": " + msg;
    }
  }
  return r;
}

QVector random_point(std::mt19937& rng, std::size_t dim, long max_abs, long max_den) {
  QVector v;
  for (std::size_t i = 0; i < dim; ++i) v.push_back(oracle::random_rational(rng, max_abs, max_den));
  return v;
}

QVector random_lattice_point(std::mt19937& rng, std::size_t dim, long max_abs) {
  QVector v;
  for (std::size_t i = 0; i < dim; ++i) v.emplace_back(oracle::random_integer(rng, -max_abs, max_abs));
  return v;
}

// Symmetric positive definite A^T A + I with small integer A.
ScalarProduct random_scalar_product(std::mt19937& rng, std::size_t dim) {
  QMatrix a(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) a(i, j) = oracle::random_integer(rng, -1, 1);
  return ScalarProduct(a.transpose() * a + QMatrix::identity(dim));
}

// Linearly independent primitive vectors.
std::vector<QVector> random_basis(std::mt19937& rng, std::size_t dim, long max_abs, long max_index) {
  while (true) {
    std::vector<QVector> rays;
    for (std::size_t i = 0; i < dim; ++i) rays.push_back(oracle::random_primitive(rng, dim, max_abs));
    Rational d = determinant(QMatrix::from_columns(rays, dim));
    if (d == 0) continue;
    if (max_index > 0 && abs(d) > max_index) continue;
    return rays;
  }
}

AffineCone random_simplicial_cone(std::mt19937& rng, const RationalSpace& space, long max_abs,
                                  long max_index = 0) {
  const std::size_t n = space.ambient_dim();
  return AffineCone(space, random_point(rng, n, 3, 6), random_basis(rng, n, max_abs, max_index));
}

QVector neg(const QVector& v) { return scale(v, -1); }

// Integral unimodular matrix whose first column is the primitive vector v.
QMatrix unimodular_completion(const QVector& v) {
  QMatrix row(1, v.size());
  for (std::size_t i = 0; i < v.size(); ++i) row(0, i) = v[i];
  HermiteResult h = hermite_normal_form(row);
  // v^T u = (1, 0, ..., 0), so (u^{-1})^T has first column v.
  return inverse(h.u).transpose();
}

std::vector<QVector> random_polygon(std::mt19937& rng, long max_abs, long max_den) {
  while (true) {
    std::vector<QVector> pts;
    std::uniform_int_distribution<int> count(3, 6);
    const int n = count(rng);
    for (int i = 0; i < n; ++i) pts.push_back(random_point(rng, 2, max_abs, max_den));
    auto hull = oracle::convex_hull(pts);
    if (hull.size() >= 3) return hull;
  }
}

}  // namespace

SuiteResult translation_invariance(unsigned seed, int cases) {
  std::mt19937 rng(seed);
  MuOptions raw;
  raw.canonical_vertex = false;
  return run("translation invariance", cases, [&](int i) -> std::string {
    const std::size_t n = i % 2 == 0 ? 2 : 3;
    RationalSpace space = i % 4 == 1 ? RationalSpace::standard(random_scalar_product(rng, n))
                                     : RationalSpace::standard(n);
    AffineCone a = random_simplicial_cone(rng, space, n == 2 ? 5 : 2);
    QVector x = random_lattice_point(rng, n, 20);
    AffineCone b(space, add(a.vertex(), x), a.rays());
    const int order = n == 2 ? 4 : 2;
    TruncSeries ma = mu_cone(a, order, raw);
    if (ma != mu_cone(b, order, raw)) return show_cone(a) + " shifted by " + show(x);
    if (ma != mu_cone(a, order)) return "canonical vertex disagrees for " + show_cone(a);
    return "";
  });
}

SuiteResult signed_permutation_equivariance(unsigned seed, int cases) {
  std::mt19937 rng(seed);
  return run("signed-permutation equivariance", cases, [&](int i) -> std::string {
    const std::size_t n = i % 2 == 0 ? 2 : 3;
    RationalSpace space = RationalSpace::standard(n);
    AffineCone a = random_simplicial_cone(rng, space, n == 2 ? 5 : 2);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    QMatrix g(n, n);
    for (std::size_t r = 0; r < n; ++r) g(r, perm[r]) = rng() % 2 ? 1 : -1;
    std::vector<QVector> rays;
    for (const auto& v : a.rays()) rays.push_back(g * v);
    AffineCone b(space, g * a.vertex(), rays);
    const int order = n == 2 ? 4 : 2;
    // <xi, g x> = <g^T xi, x>.
    TruncSeries expect = substitute_linear(mu_cone(a, order), g.transpose());
    if (mu_cone(b, order) != expect) return show_cone(a);
    return "";
  });
}

SuiteResult orthogonal_sum_multiplicativity(unsigned seed, int cases) {
  std::mt19937 rng(seed);
  return run("orthogonal-sum multiplicativity", cases, [&](int i) -> std::string {
    const int order = 4;
    RationalSpace s2 = RationalSpace::standard(2);
    RationalSpace s1 = RationalSpace::standard(1);
    QVector t{oracle::random_rational(rng, 3, 8)};
    QVector r1{Rational(rng() % 2 ? 1 : -1)};
    AffineCone line(s1, t, {r1});
    TruncSeries m_line = mu_cone(line, order);
    if (i % 3 == 0) {
      // Half-line times half-line in the plane.
      QVector u{oracle::random_rational(rng, 3, 8)};
      QVector r2{Rational(rng() % 2 ? 1 : -1)};
      AffineCone other(s1, u, {r2});
      AffineCone prod(s2, {t[0], u[0]}, {{r1[0], 0}, {0, r2[0]}});
      std::vector<int> m0{0}, m1{1};
      TruncSeries expect =
          multiply(embed(m_line, 2, m0), embed(mu_cone(other, order), 2, m1), order);
      if (mu_cone(prod, order) != expect) return "half-lines " + show(t) + " " + show(u);
      return "";
    }
    AffineCone a = random_simplicial_cone(rng, s2, 4);
    std::vector<QVector> rays;
    for (const auto& v : a.rays()) rays.push_back({v[0], v[1], 0});
    rays.push_back({0, 0, r1[0]});
    AffineCone prod(RationalSpace::standard(3), {a.vertex()[0], a.vertex()[1], t[0]}, rays);
    std::vector<int> m01{0, 1}, m2{2};
    TruncSeries expect = multiply(embed(mu_cone(a, order), 3, m01), embed(m_line, 3, m2), order);
    if (mu_cone(prod, order) != expect) return show_cone(a) + " x " + show_cone(line);
    return "";
  });
}

SuiteResult hyperplane_cut_valuation(unsigned seed, int cases) {
  std::mt19937 rng(seed);
  return run("hyperplane-cut valuation", cases, [&](int i) -> std::string {
    if (i % 2 == 0) {
      RationalSpace space = i % 4 == 0 ? RationalSpace::standard(2)
                                       : RationalSpace::standard(random_scalar_product(rng, 2));
      auto basis = random_basis(rng, 2, 4, 0);
      const QVector& u = basis[0];
      const QVector& v = basis[1];
      std::uniform_int_distribution<long> c(1, 3);
      QVector w = primitive_integer(add(scale(u, c(rng)), scale(v, c(rng))));
      QVector s = random_point(rng, 2, 3, 6);
      const int order = 4;
      TruncSeries whole = mu_cone(AffineCone(space, s, {u, v}), order);
      TruncSeries parts = mu_cone(AffineCone(space, s, {u, w}), order) +
                          mu_cone(AffineCone(space, s, {w, v}), order) -
                          mu_cone(AffineCone(space, s, {w}), order);
      if (whole != parts) return "split of " + show(u) + " " + show(v) + " by " + show(w);
      return "";
    }
    RationalSpace space = RationalSpace::standard(3);
    auto basis = random_basis(rng, 3, 2, 0);
    const QVector& u = basis[0];
    const QVector& v = basis[1];
    const QVector& w = basis[2];
    QVector x = primitive_integer(add(v, w));
    QVector s = random_point(rng, 3, 3, 4);
    const int order = 2;
    TruncSeries whole = mu_cone(AffineCone(space, s, {u, v, w}), order);
    TruncSeries parts = mu_cone(AffineCone(space, s, {u, v, x}), order) +
                        mu_cone(AffineCone(space, s, {u, x, w}), order) -
                        mu_cone(AffineCone(space, s, {u, x}), order);
    if (whole != parts) return "split of " + show(u) + " " + show(v) + " " + show(w);
    return "";
  });
}

SuiteResult lattice_free_vanishing(unsigned seed, int cases) {
  std::mt19937 rng(seed);
  return run("lattice-free vanishing", cases, [&](int i) -> std::string {
    const int order = 3;
    if (i % 2 == 0) {
      RationalSpace space = RationalSpace::standard(random_scalar_product(rng, 2));
      QVector v = oracle::random_primitive(rng, 2, 5);
      QVector s;
      do {
        s = random_point(rng, 2, 3, 7);
      } while (is_integer(v[0] * s[1] - v[1] * s[0]));
      TruncSeries m = mu_cone(AffineCone(space, s, {v}), order);
      if (!m.is_zero()) return "line through " + show(s) + " along " + show(v);
      return "";
    }
    RationalSpace space = RationalSpace::standard(3);
    QVector u, v, normal;
    do {
      u = oracle::random_primitive(rng, 3, 3);
      v = oracle::random_primitive(rng, 3, 3);
      normal = {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
    } while (is_zero(normal));
    normal = primitive_integer(normal);
    QVector s;
    do {
      s = random_point(rng, 3, 3, 5);
    } while (is_integer(dot(normal, s)));
    AffineCone a = i % 4 == 1 ? AffineCone(space, s, {u, v}) : AffineCone(space, s, {u});
    if (!mu_cone(a, order).is_zero()) return show_cone(a);
    return "";
  });
}

SuiteResult vertex_sum_indicator(unsigned seed, int cases) {
  std::mt19937 rng(seed);
  return run("vertex-sum indicator", cases, [&](int i) -> std::string {
    const int order = 2;
    RationalSpace space = i % 3 == 2 ? RationalSpace::standard(random_scalar_product(rng, 2))
                                     : RationalSpace::standard(2);
    Polytope p = build_polytope(space, random_polygon(rng, 4, 6));
    QVector s = i % 2 == 0 ? random_lattice_point(rng, 2, 10) : random_point(rng, 2, 10, 5);
    TruncSeries total(2, order);
    for (std::size_t v = 0; v < p.vertices().size(); ++v)
      total += mu_cone(AffineCone(space, s, tangent_cone(p, v).rays()), order);
    TruncSeries expect = TruncSeries::constant(2, order, is_integral(s) ? 1 : 0);
    if (total != expect) return "point " + show(s);
    return "";
  });
}

SuiteResult brion_identity(unsigned seed, int cases) {
  std::mt19937 rng(seed);
  return run("Brion germ identity", cases, [&](int i) -> std::string {
    const int order = 3;
    if (i % 5 == 4) {
      std::vector<QVector> verts;
      for (int k = 0; k < 4; ++k) verts.push_back(random_point(rng, 3, 3, 2));
      if (determinant(QMatrix::from_columns(
              std::vector<QVector>{sub(verts[1], verts[0]), sub(verts[2], verts[0]),
                                   sub(verts[3], verts[0])},
              3)) == 0)
        return "";
      Polytope p = build_polytope(RationalSpace::standard(3), verts);
      TruncSeries got = to_analytic(brion_sum_S(p, order));
      if (got != oracle::exp_sum_series(oracle::tetra_points(verts), 3, order))
        return "tetrahedron at " + show(verts[0]);
      return "";
    }
    auto poly = random_polygon(rng, 5, 4);
    Polytope p = build_polytope(RationalSpace::standard(2), poly);
    TruncSeries got = to_analytic(brion_sum_S(p, order));
    if (got != oracle::exp_sum_series(oracle::polygon_points(poly), 2, order))
      return "polygon starting at " + show(poly[0]);
    return "";
  });
}

SuiteResult residue_law(unsigned seed, int cases) {
  std::mt19937 rng(seed);
  return run("residue law", cases, [&](int i) -> std::string {
    const std::size_t n = i % 2 == 0 ? 2 : 3;
    const int order = 3;
    RationalSpace space = RationalSpace::standard(n);
    AffineCone a = random_simplicial_cone(rng, space, n == 2 ? 4 : 2, 30);
    const QVector& v1 = a.rays()[0];
    QMatrix u = unimodular_completion(v1);
    QMatrix uinv = inverse(u);
    auto drop_first = [&](const QVector& x) {
      QVector c = uinv * x;
      return QVector(c.begin() + 1, c.end());
    };
    std::vector<QVector> rays;
    for (std::size_t j = 1; j < a.rays().size(); ++j) rays.push_back(drop_first(a.rays()[j]));
    AffineCone proj(RationalSpace::standard(n - 1), drop_first(a.vertex()), rays);

    ResidueResult res = residue_along(s_cone(a, order), v1);
    // eta_j = <xi, u_{j+1}> for xi in the hyperplane.
    QMatrix ub = u.transpose() * res.basis;
    QMatrix m(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0; c + 1 < n; ++c) m(r - 1, c) = ub(r, c);
    MeroGerm expect = germ_neg(substitute_linear(s_cone(proj, order), m));
    if (!germ_equal(res.germ, expect)) return show_cone(a);
    return "";
  });
}

SuiteResult s_strategy_agreement(unsigned seed, int cases) {
  std::mt19937 rng(seed);
  return run("S-strategy agreement", cases, [&](int i) -> std::string {
    const std::size_t n = i % 2 == 0 ? 2 : 3;
    const int order = 3;
    RationalSpace space = RationalSpace::standard(n);
    AffineCone a = random_simplicial_cone(rng, space, n == 2 ? 7 : 3, 50);
    if (n == 3 && i % 4 == 3) {
      auto rays = a.rays();
      rays.push_back(primitive_integer(add(add(rays[0], rays[1]), rays[2])));
      rays[0] = primitive_integer(add(rays[0], rays[1]));
      a = AffineCone(space, a.vertex(), rays);
    }
    MeroGerm d = s_cone(a, order, SStrategy::Direct);
    MeroGerm b = s_cone(a, order, SStrategy::Barvinok);
    if (!germ_equal(d, b)) return show_cone(a);
    return "";
  });
}

SuiteResult closed_forms(unsigned seed, int cases) {
  std::mt19937 rng(seed);
  // Each case checks three closed forms.
  return run("closed forms vs recursion", cases, [&](int) -> std::string {
    RationalSpace space = RationalSpace::standard(random_scalar_product(rng, 2));
    MuOptions rec;
    rec.strategy = MuStrategy::Recursion;

    QVector v = oracle::random_primitive(rng, 2, 5);
    Rational lambda = oracle::random_rational(rng, 3, 9);
    QVector z = random_lattice_point(rng, 2, 5);
    AffineCone line(space, add(z, scale(v, lambda)), {v});
    if (mu_cone(line, 5) != mu_dim1_closed(lambda, v, 5))
      return "half-line " + show_cone(line);

    AffineCone a = random_simplicial_cone(rng, space, 5, 20);
    if (mu_dim2_value0(a) != mu_cone(a, 0, rec).constant_term())
      return "value at zero of " + show_cone(a);

    QVector v1 = oracle::random_primitive(rng, 2, 5);
    QMatrix u = unimodular_completion(v1);
    QVector w = u.column(1);
    long k = static_cast<long>(oracle::random_integer(rng, -3, 3).get_si());
    QVector v2 = add(w, scale(v1, k));
    if (rng() % 2) v2 = neg(v2);
    AffineCone uni(space, random_point(rng, 2, 3, 6), {v1, v2});
    if (mu_dim2_unimodular_series(uni, 6) != mu_cone(uni, 6, rec))
      return "unimodular " + show_cone(uni);
    return "";
  });
}

SuiteResult dedekind_vs_cyclotomic(unsigned seed, int cases) {
  std::mt19937 rng(seed);
  return run("Dedekind sawtooth vs cyclotomic", cases, [&](int) -> std::string {
    std::uniform_int_distribution<long> qd(1, 30), rd(-60, 60);
    const long q = qd(rng);
    long p;
    do {
      p = static_cast<long>(oracle::random_integer(rng, -40, 40).get_si());
    } while (std::gcd(p, q) != 1);
    const long r = rd(rng);
    Rational got = dedekind_sum(Integer(q), Integer(p), Integer(r));
    Rational want = oracle::dedekind_cyclotomic(q, p, r);
    if (got != want)
      return "D(" + std::to_string(q) + "," + std::to_string(p) + "," + std::to_string(r) +
             ") = " + to_string(got) + ", oracle " + to_string(want);
    return "";
  });
}

std::vector<SuiteResult> all_suites(unsigned seed, int cases) {
  return {translation_invariance(seed, cases),
          signed_permutation_equivariance(seed + 1, cases),
          orthogonal_sum_multiplicativity(seed + 2, cases),
          hyperplane_cut_valuation(seed + 3, cases),
          lattice_free_vanishing(seed + 4, cases),
          vertex_sum_indicator(seed + 5, cases),
          brion_identity(seed + 6, cases),
          residue_law(seed + 7, cases),
          s_strategy_agreement(seed + 8, cases),
          closed_forms(seed + 9, cases),
          dedekind_vs_cyclotomic(seed + 10, cases)};
}

}  // namespace props
