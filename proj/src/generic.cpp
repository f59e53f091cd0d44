#include "singlat/generic.hpp"

#include <algorithm>

#include "singlat/errors.hpp"

namespace singlat {

namespace {

void require_effective(const Lattice& lat, const IntCycle& z, const char* who) {
    if (static_cast<int>(z.size()) != lat.n())
        raise(ErrorCode::GraphMismatch, "cycle length does not match the graph");
    for (long long c : z)
        if (c < 0)
            raise(ErrorCode::PreconditionSupport, std::string(who) + " needs an effective cycle");
}

bool is_zero_cycle(const IntCycle& z) {
    return std::all_of(z.begin(), z.end(), [](long long v) { return v == 0; });
}

Int as_integer(const Rat& q, const char* who) {
    Rat r(q);
    r.canonicalize();
    if (r.get_den() != 1)
        raise(ErrorCode::Internal, std::string(who) + " produced a non-integer value");
    return r.get_num();
}

Int require_nonneg(Int value, const char* who) {
    if (value < 0)
        raise(ErrorCode::Internal, std::string(who) + " produced a negative value");
    return value;
}

// Connected components of supp(z) as vertex lists, in vertex order.
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
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

} // namespace

bool is_rational_graph(const Lattice& lat) {
    RatCycle zero(lat.n(), Rat(0));
    MinimizationResult r = min_chi_global(lat, zero, RegionKind::GT0);
    return r.min_value >= 1;
}

Int h1_oz(const Lattice& lat, const IntCycle& z) {
    require_effective(lat, z, "h1_oz");
    if (is_zero_cycle(z)) return 0;
    RatCycle zero(lat.n(), Rat(0));
    Int total = 0;
    for (const auto& comp : support_components(lat, z)) {
        IntCycle zc(lat.n(), 0);
        for (int v : comp) zc[v] = z[v];
        MinimizationResult r =
            min_chi_box(lat, zero, IntCycle(lat.n(), 0), zc, /*exclude_zero=*/true);
        total += 1 - as_integer(r.min_value, "h1_oz");
    }
    return require_nonneg(std::move(total), "h1_oz");
}

Int h1_natural(const Lattice& lat, const IntCycle& z, const RatCycle& lp) {
    require_effective(lat, z, "h1_natural");
    lat.to_estar(lp); // enforces membership in L'
    for (int v = 0; v < lat.n(); ++v)
        if (z[v] != 0 && lp[v] <= 0)
            raise(ErrorCode::PreconditionSupport,
                  "h1_natural needs l'_v > 0 on the support of Z (vertex " +
                      lat.graph().ids[v] + ")");
    MinimizationResult r = min_chi_box(lat, lp, IntCycle(lat.n(), 0), z);
    return require_nonneg(as_integer(lat.chi(lp) - r.min_value, "h1_natural"), "h1_natural");
}

Int pg(const Lattice& lat) {
    RatCycle zero(lat.n(), Rat(0));
    MinimizationResult positive = min_chi_global(lat, zero, RegionKind::GT0);
    Int value = as_integer(1 - positive.min_value, "pg");

    // Same quantity through the whole-lattice minimum and the rationality
    // correction; the two expressions must agree exactly.
    MinimizationResult whole = min_chi_global(lat, zero, RegionKind::All);
    Int alt = as_integer(-whole.min_value, "pg");
    if (positive.min_value < 1) alt += 1;
    if (value != alt)
        raise(ErrorCode::Internal, "the two geometric-genus expressions disagree");
    return require_nonneg(std::move(value), "pg");
}

Int h1_xtilde_natural(const Lattice& lat, const RatCycle& lp) {
    lat.to_estar(lp); // enforces membership in L'
    MinimizationResult r = min_chi_global(lat, lp, RegionKind::GE0);
    Int value = as_integer(lat.chi(lp) - r.min_value, "h1_xtilde_natural");
    bool integral_nonpositive =
        is_integral(lp) && std::all_of(lp.begin(), lp.end(),
                                       [](const Rat& q) { return q <= 0; });
    if (integral_nonpositive && !is_rational_graph(lat)) value += 1;
    return require_nonneg(std::move(value), "h1_xtilde_natural");
}

Int hfrak(const Lattice& lat, const IntCycle& l0) {
    require_effective(lat, l0, "hfrak");
    if (is_zero_cycle(l0)) return 0;
    RatCycle zero(lat.n(), Rat(0));
    MinimizationResult shifted = min_chi_global(lat, to_rational(l0), RegionKind::GE0);
    MinimizationResult plain = min_chi_global(lat, zero, RegionKind::GE0);
    Int value = as_integer(shifted.min_value - plain.min_value, "hfrak");
    if (!is_rational_graph(lat)) value += 1;
    return require_nonneg(std::move(value), "hfrak");
}

bool is_in_san(const Lattice& lat, const RatCycle& lp) {
    lat.to_estar(lp); // enforces membership in L'
    return chi_semigroup_member(lat, lp);
}

IntCycle maximal_ideal_cycle(const Lattice& lat) {
    RatCycle zero(lat.n(), Rat(0));
    MinimizationResult positive = min_chi_global(lat, zero, RegionKind::GT0);
    if (positive.min_value >= 1)
        raise(ErrorCode::RationalGraph, "maximal ideal cycle needs a non-rational graph");

    MinimizationResult whole = min_chi_global(lat, zero, RegionKind::All);
    if (whole.min_value != positive.min_value)
        raise(ErrorCode::Internal,
              "minimum over the whole lattice escaped the positive cone");

    IntCycle join(lat.n(), 0);
    for (const auto& m : positive.minimizers)
        for (int v = 0; v < lat.n(); ++v) join[v] = std::max(join[v], m[v]);
    if (Rat(lat.chi(join)) != positive.min_value)
        raise(ErrorCode::NotALattice,
              "chi minimizer set has no pointwise-maximal element");
    return join;
}

} // namespace singlat
