// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "emlattice/germ.hpp"
#include "emlattice/polycone.hpp"

namespace emlattice {

enum class SStrategy { Auto, Direct, Barvinok };

// Germ of the integral of e^{<xi,x>} over the cone (lattice measure on its span).
MeroGerm i_cone(const AffineCone& a, int order);
// Germ of the sum of e^{<xi,x>} over the lattice points of the cone.
MeroGerm s_cone(const AffineCone& a, int order, SStrategy strategy = SStrategy::Auto);
// Sum of the vertex-cone germs; analytic for a polytope.
MeroGerm brion_sum_S(const Polytope& p, int order, SStrategy strategy = SStrategy::Auto);

namespace detail {

// Germs in intrinsic variables. With `relative` the factor e^{<eta, vertex>}
// is omitted.
MeroGerm i_local(const LocalCone& a, int order, bool relative);
MeroGerm s_local(const LocalCone& a, int order, SStrategy strategy, bool relative);
// Index bound below which Auto enumerates box points directly.
inline constexpr long kDirectIndexLimit = 200;

}  // namespace detail

}  // namespace emlattice
