#pragma once

#include <optional>
#include <string>
#include <vector>

#include "singlat/abel.hpp"
#include "singlat/lattice.hpp"

namespace singlat {

enum class TauMode { Equality, StrictUpperBound, Undefined };

const char* tau_mode_name(TauMode mode);

// tau of the closure of an Abel image: the binomial product
// prod over v with (l',E_v) > 0 of C(t_v, (l',E_v)), t_v = (Z - Z_K, E_v).
// Equality mode (generic structure, Z = C_min) reports the exact value;
// bound mode reports the same product as a strict upper bound.
struct TauReport {
    std::vector<std::string> vertex_ids; // vertex order of this report
    std::vector<Int> t;                  // per vertex of the report's graph
    std::vector<Int> a;                  // (l', E_v) per vertex
    std::optional<Int> tau;
    TauMode mode = TauMode::Undefined;
    std::optional<Int> dual_dim_claim;   // h1(O_Z) - 1; equality mode only
    bool cmin_checked = false;           // equality: verified combinatorially
    bool cmin_asserted = false;          // bound: supplied by the caller
    std::vector<TauReport> per_component;
    std::string section_note;            // unverified analytic side conditions
};

// t_v = (-Z_K + Z, E_v), exact integers by adjunction.
std::vector<Int> t_vector(const Lattice& lat, const IntCycle& z);

// Equality mode. Verifies Z = C_min(Z, l') (CminViolation otherwise) and
// t_v >= 0 on the support of l' (TNegative otherwise).
TauReport tau_generic(const Lattice& lat, const IntCycle& z, const ChernClass& chern);

// Bound mode. Z = C_min(Z, l') is asserted by the caller, not checked;
// the true tau of an arbitrary structure is strictly below the product.
TauReport tau_upper_bound(const Lattice& lat, const IntCycle& z, const ChernClass& chern);

// Per connected component of |Z| (Z > 0, support may be partial; the support
// of l' must lie in |Z|). The product over components must equal the
// whole-graph product exactly.
TauReport tau_components(const Lattice& lat, const IntCycle& z,
                         const ChernClass& chern, bool bound_mode);

// cl = mu + tau; mu comes from outside, it is never computed here.
Int class_relation(const Int& tau, const Int& mu);

} // namespace singlat
