#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "singlat/graph.hpp"

namespace singlat {

using Int = mpz_class;
using Rat = mpq_class;

// Elements of L in the {E_v} basis. Coefficient magnitudes stay desk-scale
// (bounded by enumeration ranges); all arithmetic on them is promoted to
// arbitrary precision.
using IntCycle = std::vector<long long>;
// Elements of L (x) Q in the {E_v} basis, exact rationals.
using RatCycle = std::vector<Rat>;

RatCycle to_rational(const IntCycle& c);
bool is_integral(const RatCycle& c);
IntCycle to_integral(const RatCycle& c); // requires is_integral

// The intersection form over the vertex order together with its exact
// inverse and determinant.
struct Pairing {
    std::vector<std::vector<Rat>> form;    // I
    std::vector<std::vector<Rat>> inverse; // I^{-1}, verified I*I^{-1} = id
    Rat det;                               // det I
};

// A Chern class l' in L': the rational cycle plus, when l' lies in -S',
// the certificate a_v >= 0 with l' = -sum_v a_v E*_v. The a_v always equal
// the pairings (l', E_v).
struct ChernClass {
    RatCycle as_rational;
    std::vector<Int> pairings;           // a_v = (l', E_v), integral
    std::optional<std::vector<Int>> estar_coeffs; // present iff all a_v >= 0
    std::vector<int> support;            // I(l') = {v : a_v != 0}
    std::vector<int> support_star;       // |l'|_* = {v : a_v > 0}

    bool in_minus_lipman() const { return estar_coeffs.has_value(); }
};

// Exact lattice data of a validated graph: the pairing, the dual basis
// E*_v (columns of -I^{-1}, all coordinates strictly positive), and the
// canonical cycle Z_K solving (-Z_K + E_v, E_v) + 2 = 0. Read-only after
// construction, safe to share across threads.
class Lattice {
public:
    explicit Lattice(ResolutionGraph graph);

    const ResolutionGraph& graph() const { return graph_; }
    int n() const { return graph_.vertex_count(); }
    const Pairing& pairing() const { return pairing_; }
    const RatCycle& canonical_cycle() const { return zk_; }
    const std::vector<RatCycle>& dual_basis() const { return dual_; }

    Rat intersect(const RatCycle& a, const RatCycle& b) const;
    Rat intersect(const IntCycle& a, const IntCycle& b) const;
    // (x, E_v) for a single basis vector; cheap sparse row sum.
    Rat pair_with_vertex(const RatCycle& x, int v) const;
    Int pair_with_vertex(const IntCycle& x, int v) const;

    // chi(l') = -(l', l' - Z_K)/2; integral on L.
    Rat chi(const RatCycle& x) const;
    Int chi(const IntCycle& x) const;

    // Componentwise pairings a_v = (x, E_v); throws NotInLprime when some
    // pairing is non-integral. estar_coeffs filled iff all a_v >= 0.
    ChernClass to_estar(const RatCycle& x) const;

    // l' = -sum a_v E*_v for nonnegative integer coefficients; always in -S'.
    RatCycle chern_from_estar(const std::vector<Int>& a) const;

    bool in_lipman_cone(const RatCycle& x) const;

private:
    ResolutionGraph graph_;
    std::vector<std::vector<int>> adj_;
    Pairing pairing_;
    RatCycle zk_;
    std::vector<RatCycle> dual_;
};

} // namespace singlat
