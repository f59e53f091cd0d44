#include "singlat/abel.hpp"

#include <algorithm>

#include "singlat/config.hpp"
#include "singlat/errors.hpp"
#include "singlat/generic.hpp"

namespace singlat {

namespace {

void require_cycle(const Lattice& lat, const IntCycle& z, const char* who) {
    if (static_cast<int>(z.size()) != lat.n())
        raise(ErrorCode::GraphMismatch, "cycle length does not match the graph");
    for (long long c : z)
        if (c < 0)
            raise(ErrorCode::PreconditionSupport, std::string(who) + " needs an effective cycle");
}

void require_z_ge_e(const Lattice& lat, const IntCycle& z, const char* who) {
    require_cycle(lat, z, who);
    for (long long c : z)
        if (c < 1)
            raise(ErrorCode::PreconditionSupport,
                  std::string(who) + " needs Z >= E on the whole vertex set");
}

void require_positive(const Lattice& lat, const IntCycle& z, const char* who) {
    require_cycle(lat, z, who);
    if (std::all_of(z.begin(), z.end(), [](long long v) { return v == 0; }))
        raise(ErrorCode::PreconditionSupport, std::string(who) + " needs a nonzero cycle");
}

void require_minus_cone(const ChernClass& chern, const char* who) {
    if (!chern.in_minus_lipman())
        raise(ErrorCode::PreconditionSupport,
              std::string(who) + " needs a Chern class in -S' (all (l', E_v) >= 0)");
}

Int as_integer(const Rat& q, const char* who) {
    Rat r(q);
    r.canonicalize();
    if (r.get_den() != 1)
        raise(ErrorCode::Internal, std::string(who) + " produced a non-integer value");
    return r.get_num();
}

RatCycle negate(const RatCycle& x) {
    RatCycle out(x);
    for (auto& q : out) q = -q;
    return out;
}

std::vector<std::vector<int>> support_components(const Lattice& lat, const IntCycle& z) {
    const int n = lat.n();
    auto adj = lat.graph().adjacency();
    std::vector<char> seen(n, 0);
    std::vector<std::vector<int>> comps;
    for (int v = 0; v < n; ++v) {
        if (z[v] == 0 || seen[v]) continue;
        std::vector<int> comp, stack{v};
        seen[v] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            comp.push_back(u);
            for (int w : adj[u])
                if (z[w] != 0 && !seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
        comps.push_back(std::move(comp));
    }
    return comps;
}

// h1 of the structure sheaf read from a chi table with offset 0: sum over
// the components of supp(y) of 1 - min_{0 < l <= y_c} chi(l).
Int h1_from_table(const Lattice& lat, const ChiBoxTable& table, const IntCycle& y) {
    Int total = 0;
    for (const auto& comp : support_components(lat, y)) {
        IntCycle yc(lat.n(), 0);
        for (int v : comp) yc[v] = y[v];
        total += as_integer(1 - table.min_chi_upto(yc), "h1 over a component");
    }
    return total;
}

} // namespace

bool eca_nonempty(const Lattice& lat, const RatCycle& chern) {
    return lat.to_estar(chern).in_minus_lipman();
}

Int dim_eca(const Lattice& lat, const IntCycle& z, const ChernClass& chern) {
    require_z_ge_e(lat, z, "dim_eca");
    require_minus_cone(chern, "dim_eca");
    Int dim = 0;
    for (int v = 0; v < lat.n(); ++v) dim += chern.pairings[v] * static_cast<long>(z[v]);
    if (dim < 0)
        raise(ErrorCode::Internal, "(l', Z) negative despite the -S' certificate");
    return dim;
}

Int fiber_dim(const Lattice& lat, const IntCycle& z, const ChernClass& chern,
              const Int& h1_of_bundle, const Int& h1_structure) {
    require_z_ge_e(lat, z, "fiber_dim");
    require_minus_cone(chern, "fiber_dim");
    if (h1_of_bundle < 0 || h1_structure < 0)
        raise(ErrorCode::PreconditionSupport, "fiber_dim needs nonnegative h1 inputs");
    return dim_eca(lat, z, chern) + h1_of_bundle - h1_structure;
}

CminResult image_dimension(const Lattice& lat, const IntCycle& z, const ChernClass& chern) {
    require_z_ge_e(lat, z, "image_dimension");
    require_minus_cone(chern, "image_dimension");
    const int n = lat.n();

    RatCycle zero_offset(n, Rat(0));
    ChiBoxTable table(lat, zero_offset, z, enum_limit());
    const Int h1_top = h1_from_table(lat, table, z);

    bool has = false;
    Int best;
    std::vector<IntCycle> argmins;
    IntCycle z1(n, 0);
    const std::uint64_t total = table.size();
    for (std::uint64_t i = 0; i < total; ++i) {
        Int value = h1_top - h1_from_table(lat, table, z1);
        for (int v = 0; v < n; ++v) value += chern.pairings[v] * static_cast<long>(z1[v]);
        if (!has || value < best) {
            has = true;
            best = value;
            argmins.assign(1, z1);
        } else if (value == best) {
            argmins.push_back(z1);
        }
        for (int k = 0; k < n; ++k) {
            if (z1[k] < z[k]) {
                ++z1[k];
                break;
            }
            z1[k] = 0;
        }
    }

    CminResult out;
    out.d = best;
    std::sort(argmins.begin(), argmins.end());
    out.minimizers = std::move(argmins);

    IntCycle meet(out.minimizers.front()), join(out.minimizers.front());
    for (const auto& m : out.minimizers)
        for (int v = 0; v < n; ++v) {
            meet[v] = std::min(meet[v], m[v]);
            join[v] = std::max(join[v], m[v]);
        }
    auto value_at = [&](const IntCycle& y) {
        Int value = h1_top - h1_from_table(lat, table, y);
        for (int v = 0; v < n; ++v) value += chern.pairings[v] * static_cast<long>(y[v]);
        return value;
    };
    if (value_at(meet) != best || value_at(join) != best)
        raise(ErrorCode::NotALattice,
              "image-dimension minimizer family lacks its pointwise min or max");
    out.cmin = std::move(meet);
    out.cmax = std::move(join);
    out.z_equals_cmin = (out.cmin == z);

    if (out.d < 0)
        raise(ErrorCode::Internal, "negative image dimension");
    return out;
}

Int e_z(const Lattice& lat, const IntCycle& z, const std::vector<int>& subset) {
    require_cycle(lat, z, "e_z");
    if (subset.empty())
        raise(ErrorCode::PreconditionSupport, "e_z needs a nonempty vertex set");
    IntCycle rest(z);
    for (int v : subset) {
        if (v < 0 || v >= lat.n())
            raise(ErrorCode::PreconditionSupport, "e_z vertex index out of range");
        rest[v] = 0;
    }
    Int value = h1_oz(lat, z) - h1_oz(lat, rest);
    if (value < 0)
        raise(ErrorCode::Internal, "e_z broke the monotonicity of h1");
    return value;
}

HyperellipticThresholds hyperelliptic_thresholds(const Lattice& lat, const IntCycle& z,
                                                 int u, std::optional<int> u2) {
    require_positive(lat, z, "hyperelliptic_thresholds");
    if (u < 0 || u >= lat.n() || (u2 && (*u2 < 0 || *u2 >= lat.n())))
        raise(ErrorCode::PreconditionSupport, "vertex index out of range");
    HyperellipticThresholds out;
    out.e_single = e_z(lat, z, {u});
    out.single_hypothesis_ok = (z[u] == 1);
    out.single_meets_ge3 = (out.e_single >= 3);
    if (u2) {
        if (*u2 == u)
            raise(ErrorCode::PreconditionSupport, "the two vertices must be distinct");
        out.e_pair = e_z(lat, z, {u, *u2});
        out.pair_hypothesis_ok = (z[u] == 1 && z[*u2] == 1);
        out.pair_meets_ge3 = (*out.e_pair >= 3);
    }
    return out;
}

bool is_dominant(const Lattice& lat, const IntCycle& z, const ChernClass& chern) {
    require_positive(lat, z, "is_dominant");
    require_minus_cone(chern, "is_dominant");
    RatCycle off = negate(chern.as_rational);
    MinimizationResult r = min_chi_box(lat, off, IntCycle(lat.n(), 0), z,
                                       /*exclude_zero=*/true);
    return r.min_value > lat.chi(off);
}

Int h1_generic_pic(const Lattice& lat, const IntCycle& z, const ChernClass& chern) {
    require_z_ge_e(lat, z, "h1_generic_pic");
    require_minus_cone(chern, "h1_generic_pic");
    RatCycle off = negate(chern.as_rational);
    MinimizationResult r = min_chi_box(lat, off, IntCycle(lat.n(), 0), z);
    Int value = as_integer(lat.chi(off) - r.min_value, "h1_generic_pic");
    if (value < 0)
        raise(ErrorCode::Internal, "negative h1 from the generic bundle formula");
    return value;
}

Int h1_generic_abel_image(const Lattice& lat, const IntCycle& z, const ChernClass& chern) {
    require_z_ge_e(lat, z, "h1_generic_abel_image");
    require_minus_cone(chern, "h1_generic_abel_image");
    const int n = lat.n();

    RatCycle off = negate(chern.as_rational);
    ChiBoxTable table(lat, off, z, enum_limit());
    const Rat chi0 = lat.chi(off);

    Int best = 0; // the empty subcycle contributes zero
    IntCycle zp(n, 0);
    const std::uint64_t total = table.size();
    for (std::uint64_t i = 0; i + 1 < total; ++i) {
        for (int k = 0; k < n; ++k) {
            if (zp[k] < z[k]) {
                ++zp[k];
                break;
            }
            zp[k] = 0;
        }
        Rat sum = 0;
        for (const auto& comp : support_components(lat, zp)) {
            IntCycle zc(n, 0);
            for (int v : comp) zc[v] = zp[v];
            // dominance of l' on the component; D = 1 on failure
            bool dominant = table.min_chi_upto(zc) > chi0;
            sum += chi0 - table.chi_at(zc);
            if (!dominant) sum += 1;
        }
        Int candidate = as_integer(sum, "h1_generic_abel_image");
        if (candidate > best) best = candidate;
    }
    return best;
}

Int ConstantH1Provider::h1(const Lattice&, const IntCycle&, const RatCycle&) const {
    if (value_ < 0)
        raise(ErrorCode::ProviderFailure, "constant h1 provider holds a negative value");
    return value_;
}

Int GenericH1Provider::h1(const Lattice& lat, const IntCycle& cycle,
                          const RatCycle& chern) const {
    for (long long c : cycle)
        if (c < 0)
            raise(ErrorCode::ProviderFailure, "generic h1 provider needs an effective cycle");
    RatCycle off = negate(chern);
    MinimizationResult r = min_chi_box(lat, off, IntCycle(lat.n(), 0), cycle);
    Rat value = lat.chi(off) - r.min_value;
    value.canonicalize();
    if (value.get_den() != 1 || value < 0)
        raise(ErrorCode::ProviderFailure, "generic h1 provider produced an invalid value");
    return value.get_num();
}

std::string TableH1Provider::key_for(const Lattice& lat, const IntCycle& cycle) {
    std::string key;
    for (int v = 0; v < lat.n(); ++v) {
        if (cycle[v] == 0) continue;
        if (!key.empty()) key += ',';
        key += lat.graph().ids[v] + "=" + std::to_string(cycle[v]);
    }
    return key.empty() ? "0" : key;
}

Int TableH1Provider::h1(const Lattice& lat, const IntCycle& cycle, const RatCycle&) const {
    auto it = table_.find(key_for(lat, cycle));
    if (it == table_.end())
        raise(ErrorCode::ProviderFailure,
              "h1 table has no entry for cycle " + key_for(lat, cycle));
    if (it->second < 0)
        raise(ErrorCode::ProviderFailure, "h1 table holds a negative value");
    return it->second;
}

DominanceResult relative_dominance(const Lattice& lat, const IntCycle& z,
                                   const IntCycle& z1, const ChernClass& chern,
                                   const H1Provider& provider) {
    require_z_ge_e(lat, z, "relative_dominance");
    require_cycle(lat, z1, "relative_dominance");
    require_minus_cone(chern, "relative_dominance");
    const int n = lat.n();
    for (int v = 0; v < n; ++v)
        if (z1[v] > z[v])
            raise(ErrorCode::PreconditionSupport, "relative_dominance needs Z_1 <= Z");

    RatCycle off = negate(chern.as_rational);
    ChiBoxTable table(lat, off, z, enum_limit());
    Rat lhs = lat.chi(off) - Rat(provider.h1(lat, z1, chern.as_rational));

    IntCycle l(n, 0);
    RatCycle twisted(n);
    const std::uint64_t total = table.size();
    for (std::uint64_t i = 0; i + 1 < total; ++i) {
        for (int k = 0; k < n; ++k) {
            if (l[k] < z[k]) {
                ++l[k];
                break;
            }
            l[k] = 0;
        }
        IntCycle rest(n);
        for (int v = 0; v < n; ++v)
            rest[v] = std::min(z[v] - l[v], z1[v]);
        for (int v = 0; v < n; ++v)
            twisted[v] = chern.as_rational[v] - Rat(static_cast<long>(l[v]));
        Rat rhs = table.chi_at(l) - Rat(provider.h1(lat, rest, twisted));
        if (!(lhs < rhs)) return DominanceResult{false, l};
    }
    return DominanceResult{true, std::nullopt};
}

Int h1_relative_generic(const Lattice& lat, const IntCycle& z, const IntCycle& z1,
                        const ChernClass& chern, const H1Provider& provider) {
    require_z_ge_e(lat, z, "h1_relative_generic");
    require_cycle(lat, z1, "h1_relative_generic");
    require_minus_cone(chern, "h1_relative_generic");
    const int n = lat.n();
    for (int v = 0; v < n; ++v)
        if (z1[v] > z[v])
            raise(ErrorCode::PreconditionSupport, "h1_relative_generic needs Z_1 <= Z");

    RatCycle off = negate(chern.as_rational);
    ChiBoxTable table(lat, off, z, enum_limit());

    bool has = false;
    Rat best;
    IntCycle l(n, 0);
    RatCycle twisted(n);
    const std::uint64_t total = table.size();
    for (std::uint64_t i = 0; i < total; ++i) {
        IntCycle rest(n);
        for (int v = 0; v < n; ++v)
            rest[v] = std::min(z[v] - l[v], z1[v]);
        for (int v = 0; v < n; ++v)
            twisted[v] = chern.as_rational[v] - Rat(static_cast<long>(l[v]));
        Rat value = table.chi_at(l) - Rat(provider.h1(lat, rest, twisted));
        if (!has || value < best) {
            has = true;
            best = value;
        }
        for (int k = 0; k < n; ++k) {
            if (l[k] < z[k]) {
                ++l[k];
                break;
            }
            l[k] = 0;
        }
    }
    return as_integer(lat.chi(off) - best, "h1_relative_generic");
}

} // namespace singlat
