// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <vector>

#include "emlattice/mu.hpp"
#include "emlattice/polycone.hpp"

namespace emlattice {

// Polynomial on the ambient space, as a sparse table of exponent vectors.
class Polynomial {
 public:
  using Exponent = std::vector<int>;

  Polynomial() = default;
  explicit Polynomial(int dim) : dim_(dim) {}
  static Polynomial constant(int dim, const Rational& c);
  static Polynomial monomial(int dim, const Exponent& e, const Rational& c = 1);

  int dim() const { return dim_; }
  // -1 for the zero polynomial.
  int degree() const;
  const std::map<Exponent, Rational>& terms() const { return terms_; }
  void add_term(const Exponent& e, const Rational& c);
  Rational evaluate(const QVector& x) const;
  // Dense series of the given order (at least degree()).
  TruncSeries to_series(int order) const;
  static Polynomial from_series(const TruncSeries& s);

  bool operator==(const Polynomial& other) const = default;

 private:
  int dim_ = 0;
  std::map<Exponent, Rational> terms_;
};

struct FaceOperator {
  FaceHandle face;
  TruncSeries symbol;  // ambient dual coordinates
  int order = 0;
  // The constant term nu(p, f).
  const Rational& nu() const { return symbol.constant_term(); }
};

FaceOperator face_operator(const Polytope& p, const FaceHandle& f, int order,
                           const MuOptions& options = {});
// Operator of the transverse cone with its vertex dilated by t.
FaceOperator dilated_face_operator(const Polytope& p, const FaceHandle& f, const Rational& t,
                                   int order, const MuOptions& options = {});

// sum_A c_A d^A h; throws DomainError when the operator order is below deg h.
Polynomial apply_operator(const FaceOperator& op, const Polynomial& h);

// Integral of g over a face with the Lebesgue measure of the face lattice.
Rational integrate_over_face(const Polytope& p, const FaceHandle& f, const Polynomial& g,
                             bool pull_greatest = false);
// Integral of g over the simplex with the given ambient vertices; the measure
// is normalized by the lattice of `space` intersected with the simplex's span.
Rational integrate_over_simplex(const RationalSpace& space, const std::vector<QVector>& vertices,
                                const Polynomial& g);

struct FaceContribution {
  std::size_t face = 0;
  int dim = 0;
  std::vector<std::size_t> vertices;
  Rational nu;
  Rational value;
};

struct ContributionReport {
  std::vector<FaceContribution> faces;
  Rational total;
};

ContributionReport em_sum(const Polytope& p, const Polynomial& h, const MuOptions& options = {});

// Enumeration cap from EMLATTICE_MAX_ENUM (default 10^7).
std::uint64_t max_enumeration();
Rational brute_force_sum(const Polytope& p, const Polynomial& h);
Rational brute_force_sum_parallel(const Polytope& p, const Polynomial& h);
// Number of lattice points, by enumeration.
Integer brute_force_count(const Polytope& p);

}  // namespace emlattice
