// SPDX-License-Identifier: Apache-2.0
//
// Meromorphic germs at zero with linear-form poles: num / prod <xi, v>.
#pragma once

#include <vector>

#include "emlattice/series.hpp"

namespace emlattice {

// <xi, original> = scale * <xi, form>, with form primitive integral and its
// first nonzero entry positive.
struct NormalizedForm {
  QVector form;
  Rational scale;
};
NormalizedForm normalize_form(const QVector& v);

class MeroGerm {
 public:
  MeroGerm();
  // Denominator forms are normalized; the scales are folded into num.
  MeroGerm(TruncSeries num, const std::vector<QVector>& den);
  static MeroGerm analytic(TruncSeries s);
  static MeroGerm zero(int nvars, int valid_order);

  int nvars() const { return num_.nvars(); }
  // Order up to which the germ's Laurent data is exact.
  int valid_order() const { return num_.order() - static_cast<int>(den_.size()); }
  const TruncSeries& numerator() const { return num_; }
  // Sorted multiset of normalized forms.
  const std::vector<QVector>& denominator() const { return den_; }

 private:
  TruncSeries num_;
  std::vector<QVector> den_;
  friend MeroGerm germ_mul(const MeroGerm&, const MeroGerm&);
  friend MeroGerm multiply_by_form(const MeroGerm&, const QVector&);
};

MeroGerm germ_add(const MeroGerm& a, const MeroGerm& b);
MeroGerm germ_sub(const MeroGerm& a, const MeroGerm& b);
MeroGerm germ_neg(const MeroGerm& a);
MeroGerm germ_scale(const MeroGerm& a, const Rational& c);
MeroGerm germ_mul(const MeroGerm& a, const MeroGerm& b);
MeroGerm germ_sum(const std::vector<MeroGerm>& terms, int nvars, int valid_order);
MeroGerm multiply_by_form(const MeroGerm& g, const QVector& v);

// Taylor series of a germ that is analytic at 0; throws NotDivisible otherwise.
TruncSeries to_analytic(const MeroGerm& g);
// g(M zeta) for M of shape nvars x new_nvars.
MeroGerm substitute_linear(const MeroGerm& g, const QMatrix& m);

struct ResidueResult {
  MeroGerm germ;  // in coordinates of the hyperplane basis
  QMatrix basis;  // columns: basis of {xi : <xi, v> = 0}
};
// Restriction of <xi, v> g to the hyperplane <xi, v> = 0.
ResidueResult residue_along(const MeroGerm& g, const QVector& v);

// Equality up to the smaller valid order.
bool germ_equal(const MeroGerm& a, const MeroGerm& b);

}  // namespace emlattice
