#include "singlat/cycle_search.hpp"

#include <algorithm>

#include "singlat/config.hpp"
#include "singlat/errors.hpp"

namespace singlat {

namespace {

bool all_nonpositive(const IntCycle& c) {
    return std::all_of(c.begin(), c.end(), [](long long v) { return v <= 0; });
}

IntCycle pointwise_min(const std::vector<IntCycle>& cycles) {
    IntCycle out(cycles.front());
    for (const auto& c : cycles)
        for (size_t v = 0; v < out.size(); ++v) out[v] = std::min(out[v], c[v]);
    return out;
}

bool in_cone(const Lattice& lat, const IntCycle& z) {
    for (int v = 0; v < lat.n(); ++v)
        if (lat.pair_with_vertex(z, v) > 0) return false;
    return true;
}

IntCycle laufer_from(const Lattice& lat, IntCycle z) {
    const std::uint64_t guard = enum_limit();
    std::uint64_t steps = 0;
    for (;;) {
        int next = -1;
        for (int v = 0; v < lat.n(); ++v) {
            if (lat.pair_with_vertex(z, v) > 0) {
                next = v;
                break;
            }
        }
        if (next < 0) return z;
        ++z[next];
        if (++steps > guard)
            raise(ErrorCode::RegionTooLarge, "Laufer iteration exceeded the step limit");
    }
}

} // namespace

IntCycle laufer_zmin(const Lattice& lat) {
    IntCycle start(lat.n(), 0);
    start[0] = 1;
    return laufer_from(lat, std::move(start));
}

IntCycle laufer_above(const Lattice& lat, const IntCycle& start) {
    if (static_cast<int>(start.size()) != lat.n())
        raise(ErrorCode::GraphMismatch, "cycle length does not match the graph");
    return laufer_from(lat, start);
}

std::optional<IntCycle> cone_minimum_oracle(const Lattice& lat, const IntCycle& upper) {
    const int n = lat.n();
    for (long long u : upper)
        if (u < 0) raise(ErrorCode::PreconditionSupport, "oracle corner must be effective");

    std::uint64_t total = 1;
    const std::uint64_t limit = enum_limit();
    for (long long u : upper) {
        std::uint64_t size = static_cast<std::uint64_t>(u) + 1;
        if (total > limit / size)
            raise(ErrorCode::RegionTooLarge, "cone oracle box exceeds the enumeration limit");
        total *= size;
    }

    std::vector<IntCycle> members;
    IntCycle x(n, 0);
    for (std::uint64_t i = 0; i < total; ++i) {
        bool zero = std::all_of(x.begin(), x.end(), [](long long v) { return v == 0; });
        if (!zero && in_cone(lat, x)) members.push_back(x);
        for (int k = 0; k < n; ++k) {
            if (x[k] < upper[k]) {
                ++x[k];
                break;
            }
            x[k] = 0;
        }
    }
    if (members.empty()) return std::nullopt;
    IntCycle meet = pointwise_min(members);
    if (!in_cone(lat, meet) || all_nonpositive(meet))
        raise(ErrorCode::Internal, "cone member set is not closed under pointwise min");
    return meet;
}

MinimizationResult min_chi_box(const Lattice& lat, const RatCycle& offset,
                               const IntCycle& lower, const IntCycle& upper,
                               bool exclude_zero) {
    if (static_cast<int>(lower.size()) != lat.n() ||
        static_cast<int>(upper.size()) != lat.n())
        raise(ErrorCode::GraphMismatch, "box corners do not match the graph");
    for (size_t v = 0; v < lower.size(); ++v)
        if (lower[v] > upper[v])
            raise(ErrorCode::PreconditionSupport, "box lower corner exceeds upper corner");
    BoxMin bm = min_chi_over_box(lat, offset, lower, upper, exclude_zero, enum_limit());
    MinimizationResult out;
    out.min_value = bm.min_chi;
    out.minimizers = std::move(bm.argmins);
    out.region = RegionDesc{RegionKind::Box, lower, upper};
    out.certified = true; // exhaustive by construction
    out.points = bm.points;
    return out;
}

MinimizationResult min_chi_global(const Lattice& lat, const RatCycle& offset,
                                  RegionKind region) {
    Region reg;
    switch (region) {
        case RegionKind::GE0: reg = Region::GE0; break;
        case RegionKind::GT0: reg = Region::GT0; break;
        case RegionKind::All: reg = Region::All; break;
        default:
            raise(ErrorCode::PreconditionSupport, "global minimization needs ge0, gt0 or all");
    }
    GlobalMin gm = min_chi_global_enum(lat, offset, reg, enum_limit());
    MinimizationResult out;
    out.min_value = gm.min_chi;
    out.minimizers = std::move(gm.argmins);
    out.region = RegionDesc{region, {}, {}};
    out.certified = true;
    out.points = gm.points;
    return out;
}

bool chi_semigroup_member(const Lattice& lat, const RatCycle& s) {
    bool zero = std::all_of(s.begin(), s.end(), [](const Rat& q) { return q == 0; });
    if (zero) return true;
    GlobalMin gm = min_chi_global_enum(lat, s, Region::GT0, enum_limit());
    return gm.min_chi > lat.chi(s);
}

bool chi_semigroup_member(const Lattice& lat, const IntCycle& s) {
    return chi_semigroup_member(lat, to_rational(s));
}

IntCycle minimal_semigroup_element_above(const Lattice& lat, const IntCycle& l) {
    const int n = lat.n();
    if (static_cast<int>(l.size()) != n)
        raise(ErrorCode::GraphMismatch, "cycle length does not match the graph");
    if (all_nonpositive(l)) return IntCycle(n, 0);

    IntCycle lplus(n);
    for (int v = 0; v < n; ++v) lplus[v] = std::max<long long>(l[v], 0);
    const IntCycle base = laufer_above(lat, lplus);
    const std::uint64_t limit = enum_limit();

    // Membership is monotone-free, so search boxes of growing height above
    // the minimal cone element until some member appears.
    auto collect_members = [&](const IntCycle& lo, const IntCycle& hi) {
        std::vector<IntCycle> found;
        std::uint64_t total = 1;
        for (int v = 0; v < n; ++v) {
            std::uint64_t size = static_cast<std::uint64_t>(hi[v] - lo[v]) + 1;
            if (total > limit / size)
                raise(ErrorCode::RegionTooLarge,
                      "semigroup search box exceeds the enumeration limit");
            total *= size;
        }
        IntCycle x(lo);
        for (std::uint64_t i = 0; i < total; ++i) {
            if (in_cone(lat, x) && chi_semigroup_member(lat, x)) found.push_back(x);
            for (int k = 0; k < n; ++k) {
                if (x[k] < hi[k]) {
                    ++x[k];
                    break;
                }
                x[k] = lo[k];
            }
        }
        return found;
    };

    std::vector<IntCycle> members;
    for (long long height = 0;; ++height) {
        IntCycle hi(base);
        for (int v = 0; v < n; ++v) hi[v] += height;
        members = collect_members(base, hi);
        if (!members.empty()) break;
    }

    // The minimal member lies under any member; re-collect the whole box
    // below the first finds and take the pointwise minimum.
    IntCycle cap = pointwise_min(members);
    std::vector<IntCycle> below = collect_members(lplus, cap);
    if (below.empty())
        raise(ErrorCode::Internal, "semigroup member vanished on re-enumeration");
    IntCycle meet = pointwise_min(below);
    if (!chi_semigroup_member(lat, meet))
        raise(ErrorCode::Internal, "semigroup member set is not closed under pointwise min");

    // Minimality certificate: the box [l^+, meet] holds no other member.
    std::vector<IntCycle> verify = collect_members(lplus, meet);
    if (verify.size() != 1 || verify.front() != meet)
        raise(ErrorCode::Internal, "minimal semigroup element failed its minimality check");
    return meet;
}

} // namespace singlat
