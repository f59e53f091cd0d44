#pragma once

#include "singlat/cycle_search.hpp"
#include "singlat/lattice.hpp"

namespace singlat {

// Invariants of the generic analytic structure on a graph; every value is an
// exact minimum of chi over a certified or exhaustively enumerated region.

// chi(l) >= 1 for every nonzero effective cycle.
bool is_rational_graph(const Lattice& lat);

// h1 of the structure sheaf of Z > 0. Connected support: 1 - min over
// 0 < l <= Z of chi(l); disconnected support: sum over the connected
// components of supp(Z). h1_oz(0) = 0.
Int h1_oz(const Lattice& lat, const IntCycle& z);

// h1(Z, O_Z(-l')) for l' with l'_v > 0 on supp(Z):
// chi(l') - min over 0 <= l <= Z of chi(l' + l).
Int h1_natural(const Lattice& lat, const IntCycle& z, const RatCycle& lp);

// Geometric genus: 1 - min over L_{>0} of chi. Cross-checked against the
// equivalent -min over L expression with its rationality correction.
Int pg(const Lattice& lat);

// h1 of the natural line bundle of -l' on the whole resolution:
// chi(l') - min over l >= 0 of chi(l'+l), +1 when l' is integral, l' <= 0
// and the graph is not rational.
Int h1_xtilde_natural(const Lattice& lat, const RatCycle& lp);

// Dimension of functions modulo those vanishing on l0:
// 0 for l0 = 0; otherwise min_{l>=0} chi(l0+l) - min_{l>=0} chi(l) with the
// rationality correction.
Int hfrak(const Lattice& lat, const IntCycle& l0);

// Membership in the analytic semigroup of the generic structure.
bool is_in_san(const Lattice& lat, const RatCycle& lp);

// Pointwise-maximal cycle among the positive minimizers of chi over L.
// Requires a non-rational graph; the maximum must itself attain the minimum.
IntCycle maximal_ideal_cycle(const Lattice& lat);

} // namespace singlat
