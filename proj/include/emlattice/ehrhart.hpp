// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "emlattice/euler_maclaurin.hpp"

namespace emlattice {

// Per-residue coefficient tables: residues[r][i] is the coefficient of t^i
// for t = r mod period.
struct QuasiPolynomial {
  long period = 1;
  int degree = 0;
  std::vector<std::vector<Rational>> residues;

  Rational evaluate(const Integer& t) const;
  // Coefficient of t^i as a function of the residue.
  std::vector<Rational> coefficient(int i) const;
  // Smallest divisor of the period that also describes the table.
  long minimal_period() const;
};

struct FaceQuasiContribution {
  std::size_t face = 0;
  int dim = 0;
  std::vector<std::size_t> vertices;
  long period = 1;
  // residues[r][i]: coefficient of t^i, for i = 0..dim + deg h.
  std::vector<std::vector<Rational>> residues;
  Rational evaluate(const Integer& t) const;
};

struct EhrhartResult {
  QuasiPolynomial quasi;
  std::vector<FaceQuasiContribution> faces;
};

// Contribution of face f to the sum over t*p: integral over t*f of D(p,f,t) h.
Rational dilated_face_contribution(const Polytope& p, const FaceHandle& f, const Integer& t,
                                   const Polynomial& h, const MuOptions& options = {});

EhrhartResult ehrhart_quasipoly(const Polytope& p, const Polynomial& h,
                                const MuOptions& options = {});

// Lattice points of t*p through the local formula; 1 for t = 0.
Integer count_dilate(const Polytope& p, const Integer& t, const MuOptions& options = {});

}  // namespace emlattice
