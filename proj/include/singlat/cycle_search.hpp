#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "singlat/enumerate.hpp"
#include "singlat/lattice.hpp"

namespace singlat {

enum class RegionKind { Box, GE0, GT0, All };

struct RegionDesc {
    RegionKind kind = RegionKind::Box;
    IntCycle lower, upper; // Box only
};

struct MinimizationResult {
    Rat min_value;
    std::vector<IntCycle> minimizers; // all of them, sorted
    RegionDesc region;
    bool certified = false;
    std::uint64_t points = 0;
};

// Laufer iteration: from z = E_{v0}, add E_v while some (z, E_v) > 0.
// Terminates at Z_min, the minimal nonzero cycle pairing <= 0 with every E_v.
IntCycle laufer_zmin(const Lattice& lat);

// Generalized Laufer iteration from an arbitrary start: the pointwise-minimal
// cycle z >= start with (z, E_v) <= 0 for all v.
IntCycle laufer_above(const Lattice& lat, const IntCycle& start);

// Exhaustive oracle for Z_min: enumerate 0 < l <= upper, keep the cycles
// pairing <= 0 with every E_v, return their pointwise minimum (which must
// itself be a member; the cone is min-closed).
std::optional<IntCycle> cone_minimum_oracle(const Lattice& lat, const IntCycle& upper);

// Exhaustive minimization of chi(offset + l) over the box [lower, upper]
// (optionally without the origin). This is the oracle the certified global
// search is checked against; it never reasons, it only evaluates.
MinimizationResult min_chi_box(const Lattice& lat, const RatCycle& offset,
                               const IntCycle& lower, const IntCycle& upper,
                               bool exclude_zero = false);

// Certified global minimization of chi(offset + l) over L_{>=0}, L_{>0} or L.
MinimizationResult min_chi_global(const Lattice& lat, const RatCycle& offset,
                                  RegionKind region);

// Membership test for the chi-characterized semigroup of a generic structure:
// s = 0, or chi(s) < chi(s + l) for every l > 0 (decided by certified search).
bool chi_semigroup_member(const Lattice& lat, const RatCycle& s);
bool chi_semigroup_member(const Lattice& lat, const IntCycle& s);

// The unique minimal s >= l with s in the chi-characterized semigroup.
// Bounded search above the Laufer element, pointwise minimum of the members
// found, minimality re-verified by enumerating the sub-box below the result.
IntCycle minimal_semigroup_element_above(const Lattice& lat, const IntCycle& l);

} // namespace singlat
