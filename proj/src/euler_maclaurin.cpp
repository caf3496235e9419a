// SPDX-License-Identifier: Apache-2.0
#include "emlattice/euler_maclaurin.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "emlattice/errors.hpp"
#include "emlattice/parallel.hpp"

namespace emlattice {

// ---------------------------------------------------------------- Polynomial

Polynomial Polynomial::constant(int dim, const Rational& c) {
  Polynomial p(dim);
  p.add_term(Exponent(static_cast<std::size_t>(dim), 0), c);
  return p;
}

Polynomial Polynomial::monomial(int dim, const Exponent& e, const Rational& c) {
  Polynomial p(dim);
  p.add_term(e, c);
  return p;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
  return d;
}

void Polynomial::add_term(const Exponent& e, const Rational& c) {
  if (static_cast<int>(e.size()) != dim_) throw DomainError("exponent has the wrong length");
  if (std::any_of(e.begin(), e.end(), [](int x) { return x < 0; }))
    throw DomainError("negative exponent");
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational Polynomial::evaluate(const QVector& x) const {
  if (static_cast<int>(x.size()) != dim_) throw DomainError("point has the wrong dimension");
  Rational total = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) t *= pow_rational(x[i], static_cast<unsigned>(e[i]));
    total += t;
  }
  return total;
}

TruncSeries Polynomial::to_series(int order) const {
  TruncSeries s(dim_, order);
  for (const auto& [e, c] : terms_) s.add_to(e, c);
  return s;
}

Polynomial Polynomial::from_series(const TruncSeries& s) {
  Polynomial p(s.nvars());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.at(i) == 0) continue;
    auto e = s.exponents(i);
    p.add_term(Exponent(e.begin(), e.end()), s.at(i));
  }
  return p;
}

// ---------------------------------------------------------------- operators

FaceOperator dilated_face_operator(const Polytope& p, const FaceHandle& f, const Rational& t,
                                   int order, const MuOptions& options) {
  FaceOperator op;
  op.face = f;
  op.order = order;
  op.symbol = mu_cone(transverse_cone_dilated(p, f, t), order, options);
  return op;
}

FaceOperator face_operator(const Polytope& p, const FaceHandle& f, int order,
                           const MuOptions& options) {
  return dilated_face_operator(p, f, 1, order, options);
}

Polynomial apply_operator(const FaceOperator& op, const Polynomial& h) {
  if (op.order < h.degree()) throw DomainError("operator order is below the polynomial degree");
  const TruncSeries& sym = op.symbol;
  if (sym.nvars() != h.dim()) throw DomainError("operator and polynomial dimensions differ");
  Polynomial out(h.dim());
  Polynomial::Exponent rest(static_cast<std::size_t>(h.dim()));
  for (const auto& [m, c] : h.terms()) {
    const int deg = std::accumulate(m.begin(), m.end(), 0);
    for (std::size_t idx = 0; idx < sym.degree_end(std::min(deg, sym.order())); ++idx) {
      const Rational& a = sym.at(idx);
      if (a == 0) continue;
      auto e = sym.exponents(idx);
      bool fits = true;
      Integer falling = 1;
      for (std::size_t i = 0; i < m.size() && fits; ++i) {
        if (e[i] > m[i]) {
          fits = false;
          break;
        }
        for (int j = 0; j < e[i]; ++j) falling *= m[i] - j;
        rest[i] = m[i] - e[i];
      }
      if (fits) out.add_term(rest, Rational(c * a * Rational(falling)));
    }
  }
  return out;
}

// ---------------------------------------------------------------- integration

Rational integrate_over_simplex(const RationalSpace& space, const std::vector<QVector>& vertices,
                                const Polynomial& g) {
  if (vertices.empty()) throw DomainError("simplex needs vertices");
  const std::size_t j = vertices.size() - 1;
  if (j == 0 || g.degree() < 0) {
    if (g.degree() < 0) return 0;
    return g.evaluate(vertices.front());
  }
  std::vector<QVector> edges;
  for (std::size_t i = 1; i <= j; ++i) edges.push_back(space.coordinates(sub(vertices[i], vertices[0])));
  Rational relvol = detail::relative_volume(edges, space.dim());

  const int deg = g.degree();
  QMatrix w = QMatrix::from_columns(vertices, static_cast<std::size_t>(g.dim()));
  TruncSeries bary = substitute_linear(g.to_series(deg), w);
  Rational total = 0;
  for (std::size_t idx = 0; idx < bary.size(); ++idx) {
    const Rational& c = bary.at(idx);
    if (c == 0) continue;
    Integer num = 1;
    for (int a : bary.exponents(idx)) num *= factorial(static_cast<unsigned>(a));
    total += c * Rational(num) / Rational(factorial(static_cast<unsigned>(bary.degree_of(idx)) + j));
  }
  return total * relvol;
}

Rational integrate_over_face(const Polytope& p, const FaceHandle& f, const Polynomial& g,
                             bool pull_greatest) {
  Rational total = 0;
  for (const auto& simplex : triangulate_face(p, f, pull_greatest)) {
    std::vector<QVector> verts;
    for (auto i : simplex) verts.push_back(p.vertices()[i]);
    total += integrate_over_simplex(p.space(), verts, g);
  }
  return total;
}

// ---------------------------------------------------------------- em_sum

ContributionReport em_sum(const Polytope& p, const Polynomial& h, const MuOptions& options) {
  if (static_cast<std::size_t>(h.dim()) != p.space().ambient_dim())
    throw DomainError("polynomial dimension does not match the polytope");
  const int order = std::max(h.degree(), 0);
  const auto& faces = p.faces();
  ContributionReport report;
  report.faces = parallel_map<FaceContribution>(faces.size(), [&](std::size_t i) {
    const FaceHandle& f = faces[i];
    FaceOperator op = face_operator(p, f, order, options);
    FaceContribution fc;
    fc.face = f.index;
    fc.dim = f.dim;
    fc.vertices = f.elements;
    fc.nu = op.nu();
    fc.value = integrate_over_face(p, f, apply_operator(op, h));
    return fc;
  });
  report.total = 0;
  for (const auto& fc : report.faces) report.total += fc.value;
  return report;
}

// ---------------------------------------------------------------- brute force

std::uint64_t max_enumeration() {
  const char* env = std::getenv("EMLATTICE_MAX_ENUM");
  if (env && *env) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0') return v;
  }
  return 10'000'000ull;
}

namespace {

struct Box {
  std::vector<Integer> lo, hi;
};

Box bounding_box(const Polytope& p) {
  const std::size_t k = p.space().dim();
  Box b{std::vector<Integer>(k), std::vector<Integer>(k)};
  std::vector<Rational> lo(k), hi(k);
  bool first = true;
  for (const auto& v : p.vertices()) {
    QVector c = p.space().coordinates(v);
    for (std::size_t i = 0; i < k; ++i) {
      if (first || c[i] < lo[i]) lo[i] = c[i];
      if (first || c[i] > hi[i]) hi[i] = c[i];
    }
    first = false;
  }
  for (std::size_t i = 0; i < k; ++i) {
    b.lo[i] = ceil_of(lo[i]);
    b.hi[i] = floor_of(hi[i]);
  }
  return b;
}

void check_cap(const Box& b) {
  Integer total = 1;
  for (std::size_t i = 0; i < b.lo.size(); ++i) {
    if (b.hi[i] < b.lo[i]) return;
    total *= b.hi[i] - b.lo[i] + 1;
  }
  const std::uint64_t cap = max_enumeration();
  if (total > Integer(std::to_string(cap)))
    throw CapExceeded("brute-force enumeration of " + total.get_str() +
                      " candidates exceeds EMLATTICE_MAX_ENUM=" + std::to_string(cap));
}

bool inside(const Polytope& p, const QVector& c) {
  for (const auto& hs : p.inequalities())
    if (dot(hs.normal, c) > hs.offset) return false;
  for (const auto& hs : p.equations())
    if (dot(hs.normal, c) != hs.offset) return false;
  return true;
}

// Visits the lattice points whose first coordinate equals `first`.
template <class F>
void enumerate_slice(const Polytope& p, const Box& b, const Integer& first, F&& visit) {
  const std::size_t k = b.lo.size();
  QVector c(k);
  c[0] = first;
  if (k == 1) {
    if (inside(p, c)) visit(c);
    return;
  }
  std::vector<Integer> cur(b.lo.begin() + 1, b.lo.end());
  for (std::size_t i = 1; i < k; ++i)
    if (b.hi[i] < b.lo[i]) return;
  while (true) {
    for (std::size_t i = 1; i < k; ++i) c[i] = cur[i - 1];
    if (inside(p, c)) visit(c);
    std::size_t i = k - 1;
    while (true) {
      if (cur[i - 1] < b.hi[i]) {
        ++cur[i - 1];
        break;
      }
      cur[i - 1] = b.lo[i];
      if (--i == 0) return;
    }
  }
}

Rational slice_sum(const Polytope& p, const Box& b, const Integer& first, const Polynomial& h) {
  Rational total = 0;
  enumerate_slice(p, b, first, [&](const QVector& c) { total += h.evaluate(p.space().point(c)); });
  return total;
}

}  // namespace

Rational brute_force_sum(const Polytope& p, const Polynomial& h) {
  if (p.space().dim() == 0) return h.evaluate(p.vertices().front());
  Box b = bounding_box(p);
  check_cap(b);
  Rational total = 0;
  for (Integer x = b.lo[0]; x <= b.hi[0]; ++x) total += slice_sum(p, b, x, h);
  return total;
}

Rational brute_force_sum_parallel(const Polytope& p, const Polynomial& h) {
  if (p.space().dim() == 0) return h.evaluate(p.vertices().front());
  Box b = bounding_box(p);
  check_cap(b);
  if (b.hi[0] < b.lo[0]) return 0;
  Integer width = b.hi[0] - b.lo[0] + 1;
  const std::size_t n = width.get_ui();
  std::vector<Rational> parts = parallel_map<Rational>(n, [&](std::size_t i) {
    return slice_sum(p, b, b.lo[0] + Integer(static_cast<unsigned long>(i)), h);
  });
  Rational total = 0;
  for (const auto& x : parts) total += x;
  return total;
}

Integer brute_force_count(const Polytope& p) {
  Rational r = brute_force_sum(p, Polynomial::constant(static_cast<int>(p.space().ambient_dim()), 1));
  return r.get_num();
}

}  // namespace emlattice
