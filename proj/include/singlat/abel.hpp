#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "singlat/cycle_search.hpp"
#include "singlat/lattice.hpp"

namespace singlat {

// Queries about Abel maps on a cycle Z with Chern class l' in -S'. Z >= E is
// the standing assumption of the public operations; the component-wise
// helpers accept any Z > 0.

// Nonemptiness of the divisor space: l' in -S' (empty divisor allowed at 0).
bool eca_nonempty(const Lattice& lat, const RatCycle& chern);

// Dimension of the divisor space: (l', Z).
Int dim_eca(const Lattice& lat, const IntCycle& z, const ChernClass& chern);

// Fiber dimension over a bundle with the given h1 values:
// (l', Z) + h1(Z, L) - h1(O_Z). The caller interprets the result.
Int fiber_dim(const Lattice& lat, const IntCycle& z, const ChernClass& chern,
              const Int& h1_of_bundle, const Int& h1_structure);

struct CminResult {
    Int d;                            // image dimension d_Z(l')
    std::vector<IntCycle> minimizers; // all Z_1 attaining the minimum, sorted
    IntCycle cmin, cmax;              // pointwise min/max, both attain d
    bool z_equals_cmin = false;
};

// d_Z(l') = min over 0 <= Z_1 <= Z of (l', Z_1) + h1(O_Z) - h1(O_{Z_1}),
// h1 values of the generic structure. The minimizer family must contain its
// pointwise min and max; a violation aborts rather than being patched.
CminResult image_dimension(const Lattice& lat, const IntCycle& z,
                           const ChernClass& chern);

// Stabilized image dimension for classes supported on a vertex set:
// e_Z(I) = h1(O_Z) - h1(O_{Z restricted to the complement of I}).
Int e_z(const Lattice& lat, const IntCycle& z, const std::vector<int>& subset);

struct HyperellipticThresholds {
    Int e_single;
    bool single_hypothesis_ok = false; // Z_u == 1
    bool single_meets_ge3 = false;
    std::optional<Int> e_pair;
    std::optional<bool> pair_hypothesis_ok;
    std::optional<bool> pair_meets_ge3;
};

// e_Z thresholds behind the pencil statements for vertices of coefficient 1.
HyperellipticThresholds hyperelliptic_thresholds(const Lattice& lat,
                                                 const IntCycle& z, int u,
                                                 std::optional<int> u2);

// chi(-l') < chi(-l' + l) for every 0 < l <= Z, decided exhaustively.
bool is_dominant(const Lattice& lat, const IntCycle& z, const ChernClass& chern);

// h1 of a generic line bundle with Chern class l' on Z:
// chi(-l') - min over 0 <= l <= Z of chi(-l' + l).
Int h1_generic_pic(const Lattice& lat, const IntCycle& z, const ChernClass& chern);

// h1 of the generic element of the Abel image:
// max over 0 <= Z' <= Z of the sum over connected components Z'_i of
// chi(-l') - chi(-l' + Z'_i) + D(Z'_i, l'), where D = 1 - [dominant].
Int h1_generic_abel_image(const Lattice& lat, const IntCycle& z,
                          const ChernClass& chern);

// Abstract h1 evaluation for the relative statements. The combinatorics
// cannot supply h1 of an arbitrary bundle, so the caller picks the source.
class H1Provider {
public:
    virtual ~H1Provider() = default;
    // h1 of a bundle on `cycle` whose Chern class is `chern`; nonnegative.
    virtual Int h1(const Lattice& lat, const IntCycle& cycle,
                   const RatCycle& chern) const = 0;
};

class ConstantH1Provider final : public H1Provider {
public:
    explicit ConstantH1Provider(Int value = 0) : value_(std::move(value)) {}
    Int h1(const Lattice&, const IntCycle&, const RatCycle&) const override;

private:
    Int value_;
};

// Generic-structure values: chi(-l') - min over 0 <= m <= cycle of chi(-l'+m).
class GenericH1Provider final : public H1Provider {
public:
    Int h1(const Lattice& lat, const IntCycle& cycle,
           const RatCycle& chern) const override;
};

// User-supplied table keyed by the serialized cycle ("v=k,..." over the
// nonzero coefficients, "0" for the empty cycle). Values are read as
// twist-independent; a missing key is a provider failure.
class TableH1Provider final : public H1Provider {
public:
    explicit TableH1Provider(std::map<std::string, Int> table)
        : table_(std::move(table)) {}
    Int h1(const Lattice& lat, const IntCycle& cycle,
           const RatCycle& chern) const override;

    static std::string key_for(const Lattice& lat, const IntCycle& cycle);

private:
    std::map<std::string, Int> table_;
};

struct DominanceResult {
    bool dominant = false;
    std::optional<IntCycle> witness; // first violating l when not dominant
};

// Relative dominance of (l', L|_{Z_1}) on Z: for every 0 < l <= Z,
//   chi(-l') - h1(Z_1, L) < chi(-l'+l) - h1(min(Z-l, Z_1), L(-l)).
DominanceResult relative_dominance(const Lattice& lat, const IntCycle& z,
                                   const IntCycle& z1, const ChernClass& chern,
                                   const H1Provider& provider);

// h1 of the relatively generic bundle:
// chi(-l') - min over 0 <= l <= Z of (chi(-l'+l) - h1(min(Z-l,Z_1), L(-l))).
Int h1_relative_generic(const Lattice& lat, const IntCycle& z,
                        const IntCycle& z1, const ChernClass& chern,
                        const H1Provider& provider);

} // namespace singlat
