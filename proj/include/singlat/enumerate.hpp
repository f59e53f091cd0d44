#pragma once

#include <cstdint>
#include <vector>

#include "singlat/lattice.hpp"

namespace singlat {

enum class Region { GE0, GT0, All };

// chi(offset + l) rescaled to an integer objective: F(l) = 2*s^2*chi(offset+l)
// where s clears every denominator of offset and Z_K. Minimizing F over
// integer points is minimizing chi, with no rounding anywhere.
class ScaledChi {
public:
    ScaledChi(const Lattice& lat, const RatCycle& offset);

    int n() const { return n_; }
    const Int& denom() const { return denom_; } // 2*s^2
    Rat chi_value(const Int& f) const;          // f / (2*s^2)
    Int eval(const std::vector<long long>& l) const;

    const std::vector<std::vector<Int>>& quad() const { return quad_; }
    const std::vector<Int>& lin() const { return lin_; }
    const Int& constant() const { return const_; }

private:
    int n_;
    Int denom_;
    std::vector<std::vector<Int>> quad_; // symmetric
    std::vector<Int> lin_;
    Int const_;
};

struct BoxMin {
    Rat min_chi;
    std::vector<IntCycle> argmins; // sorted lexicographically
    std::uint64_t points = 0;
};

// Reference kernel: one rational chi evaluation per lattice point, serial.
// Kept deliberately naive; the OpenMP kernel is tested against it.
BoxMin min_chi_over_box_reference(const Lattice& lat, const RatCycle& offset,
                                  const IntCycle& lo, const IntCycle& hi,
                                  bool skip_zero, std::uint64_t limit);

// Production kernel: integer-scaled objective, incremental row evaluation,
// OpenMP over chunks of the flattened box. Output is independent of the
// thread count (exact merge + canonical sort).
BoxMin min_chi_over_box(const Lattice& lat, const RatCycle& offset,
                        const IntCycle& lo, const IntCycle& hi,
                        bool skip_zero, std::uint64_t limit);

// chi(offset + y) tabulated for every 0 <= y <= upper, plus the running
// minimum m(y) = min_{0 < l <= y} chi(offset + l). Backs the image-dimension
// scans, which need chi and sub-box minima at every point of the box.
class ChiBoxTable {
public:
    ChiBoxTable(const Lattice& lat, const RatCycle& offset,
                const IntCycle& upper, std::uint64_t limit);

    const IntCycle& upper() const { return upper_; }
    std::uint64_t size() const { return total_; }
    std::uint64_t flat_index(const IntCycle& y) const;
    Rat chi_at(const IntCycle& y) const;
    // min over 0 < l <= y; y must be nonzero.
    Rat min_chi_upto(const IntCycle& y) const;

private:
    ScaledChi objective_;
    IntCycle upper_;
    std::vector<std::uint64_t> strides_;
    std::uint64_t total_;
    std::vector<Int> fval_;
    std::vector<Int> mval_; // index 0 unused
};

struct GlobalMin {
    Rat min_chi;
    std::vector<IntCycle> argmins;
    std::uint64_t points = 0;
};

// Certified global minimum of chi(offset + l) over the requested region.
// chi(offset+l) = (1/2)|l - c|^2_Q + const with Q = -I positive definite,
// so every candidate lies in an exactly-bounded ellipsoid around the
// continuous minimizer; the search walks it with an exact LDL^T split and
// shrinking radius. Completing the walk is the certificate.
GlobalMin min_chi_global_enum(const Lattice& lat, const RatCycle& offset,
                              Region region, std::uint64_t limit);

} // namespace singlat
