// SPDX-License-Identifier: Apache-2.0
#include "emlattice/ehrhart.hpp"

#include <algorithm>

#include "emlattice/errors.hpp"
#include "emlattice/parallel.hpp"

namespace emlattice {

namespace {

Rational horner(const std::vector<Rational>& c, const Rational& t) {
  Rational acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
  return acc;
}

long residue_of(const Integer& t, long period) {
  Integer r = t % period;
  if (r < 0) r += period;
  return r.get_si();
}

long to_period(const Integer& q) {
  if (!q.fits_slong_p() || q > 1'000'000) throw CapExceeded("face period " + q.get_str() + " is too large");
  return q.get_si();
}

// Coefficients of the polynomial of degree < ts.size() through (ts[i], ys[i]).
std::vector<Rational> interpolate(const std::vector<Rational>& ts, const std::vector<Rational>& ys) {
  const std::size_t n = ts.size();
  QMatrix v(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational pw = 1;
    for (std::size_t j = 0; j < n; ++j) {
      v(i, j) = pw;
      pw *= ts[i];
    }
  }
  auto c = solve(v, ys);
  if (!c) throw Error("singular interpolation system");
  return *c;
}

}  // namespace

Rational QuasiPolynomial::evaluate(const Integer& t) const {
  return horner(residues[static_cast<std::size_t>(residue_of(t, period))], Rational(t));
}

std::vector<Rational> QuasiPolynomial::coefficient(int i) const {
  std::vector<Rational> out;
  for (const auto& r : residues) out.push_back(r[static_cast<std::size_t>(i)]);
  return out;
}

long QuasiPolynomial::minimal_period() const {
  for (long d = 1; d < period; ++d) {
    if (period % d != 0) continue;
    bool ok = true;
    for (long r = d; r < period && ok; ++r)
      ok = residues[static_cast<std::size_t>(r)] == residues[static_cast<std::size_t>(r % d)];
    if (ok) return d;
  }
  return period;
}

Rational FaceQuasiContribution::evaluate(const Integer& t) const {
  return horner(residues[static_cast<std::size_t>(residue_of(t, period))], Rational(t));
}

Rational dilated_face_contribution(const Polytope& p, const FaceHandle& f, const Integer& t,
                                   const Polynomial& h, const MuOptions& options) {
  if (t < 0) throw DomainError("negative dilation");
  const int order = std::max(h.degree(), 0);
  Rational tr(t);
  FaceOperator op = dilated_face_operator(p, f, tr, order, options);
  Polynomial g = apply_operator(op, h);
  if (t == 0) return f.dim == 0 ? g.evaluate(QVector(p.space().ambient_dim())) : Rational(0);
  Rational total = 0;
  for (const auto& simplex : triangulate_face(p, f)) {
    std::vector<QVector> verts;
    for (auto i : simplex) verts.push_back(scale(p.vertices()[i], tr));
    total += integrate_over_simplex(p.space(), verts, g);
  }
  return total;
}

EhrhartResult ehrhart_quasipoly(const Polytope& p, const Polynomial& h, const MuOptions& options) {
  MuCache local_cache;
  MuOptions opts = options;
  if (!opts.cache) opts.cache = &local_cache;
  const int hdeg = std::max(h.degree(), 0);
  const int degree = p.dim() + hdeg;
  const auto& faces = p.faces();

  EhrhartResult result;
  result.faces = parallel_map<FaceQuasiContribution>(faces.size(), [&](std::size_t i) {
    const FaceHandle& f = faces[i];
    FaceQuasiContribution fc;
    fc.face = f.index;
    fc.dim = f.dim;
    fc.vertices = f.elements;
    fc.period = to_period(face_period(p, f));
    const std::size_t samples = static_cast<std::size_t>(f.dim + hdeg + 1);
    for (long r = 0; r < fc.period; ++r) {
      std::vector<Rational> ts, ys;
      for (long j = (r == 0 ? 1 : 0); ts.size() < samples; ++j) {
        Integer t = r + fc.period * j;
        ts.emplace_back(t);
        ys.push_back(dilated_face_contribution(p, f, t, h, opts));
      }
      std::vector<Rational> c = interpolate(ts, ys);
      c.resize(static_cast<std::size_t>(degree) + 1);
      fc.residues.push_back(std::move(c));
    }
    return fc;
  });

  QuasiPolynomial& q = result.quasi;
  q.degree = degree;
  Integer period = 1;
  for (const auto& fc : result.faces) period = lcm_of(period, Integer(fc.period));
  q.period = to_period(period);
  q.residues.assign(static_cast<std::size_t>(q.period),
                    std::vector<Rational>(static_cast<std::size_t>(degree) + 1));
  for (long r = 0; r < q.period; ++r) {
    auto& row = q.residues[static_cast<std::size_t>(r)];
    for (const auto& fc : result.faces) {
      const auto& c = fc.residues[static_cast<std::size_t>(r % fc.period)];
      for (std::size_t i = 0; i < row.size(); ++i) row[i] += c[i];
    }
  }
  return result;
}

Integer count_dilate(const Polytope& p, const Integer& t, const MuOptions& options) {
  if (t < 0) throw DomainError("negative dilation");
  if (t == 0) return 1;
  const int d = static_cast<int>(p.space().ambient_dim());
  Rational total = em_sum(dilate(p, Rational(t)), Polynomial::constant(d, 1), options).total;
  if (!is_integer(total)) throw Error("lattice-point count is not an integer");
  return total.get_num();
}

}  // namespace emlattice
