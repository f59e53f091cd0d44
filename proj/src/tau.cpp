#include "singlat/tau.hpp"

#include <algorithm>

#include "singlat/errors.hpp"
#include "singlat/generic.hpp"

namespace singlat {

const char* tau_mode_name(TauMode mode) {
    switch (mode) {
        case TauMode::Equality: return "EQUALITY";
        case TauMode::StrictUpperBound: return "STRICT_UPPER_BOUND";
        case TauMode::Undefined: return "UNDEFINED";
    }
    return "?";
}

namespace {

const char* kSectionNote =
    "the twisted canonical bundle on Z admits sections with reduced divisor, "
    "base-point free at curve intersections and along every support curve of "
    "the class; analytic statement, recorded but not verified here";

Int binomial(const Int& t, const Int& a) {
    if (t < 0 || a < 0)
        raise(ErrorCode::Internal, "binomial on a negative argument");
    if (!a.fits_ulong_p())
        raise(ErrorCode::Internal, "binomial lower argument out of range");
    Int out;
    mpz_bin_ui(out.get_mpz_t(), t.get_mpz_t(), a.get_ui());
    return out;
}

void require_minus_cone(const ChernClass& chern, const char* who) {
    if (!chern.in_minus_lipman())
        raise(ErrorCode::PreconditionSupport,
              std::string(who) + " needs a Chern class in -S'");
}

// The binomial product over the support of l'. TNegative wherever t_v < 0
// meets a positive a_v; C(t, a) = 0 for 0 <= t < a.
Int support_product(const Lattice& lat, const std::vector<Int>& t, const ChernClass& chern) {
    Int product = 1;
    for (int v : chern.support_star) {
        if (t[v] < 0)
            raise(ErrorCode::TNegative,
                  "t_" + lat.graph().ids[v] +
                      " is negative on the support of l'; the product formula carries "
                      "no meaning there");
        product *= binomial(t[v], chern.pairings[v]);
    }
    return product;
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
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

TauReport tau_whole(const Lattice& lat, const IntCycle& z, const ChernClass& chern,
                    bool bound_mode) {
    for (long long c : z)
        if (c < 1)
            raise(ErrorCode::PreconditionSupport, "tau needs Z >= E on the whole vertex set");
    require_minus_cone(chern, "tau");

    TauReport report;
    report.vertex_ids = lat.graph().ids;
    report.t = t_vector(lat, z);
    report.a.assign(chern.pairings.begin(), chern.pairings.end());

    if (bound_mode) {
        report.mode = TauMode::StrictUpperBound;
        report.cmin_asserted = true;
    } else {
        CminResult cm = image_dimension(lat, z, chern);
        if (!cm.z_equals_cmin)
            raise(ErrorCode::CminViolation,
                  "Z is not the minimal cycle of its image dimension; the equality "
                  "formula does not apply");
        report.mode = TauMode::Equality;
        report.cmin_checked = true;
        report.dual_dim_claim = h1_oz(lat, z) - 1;
        report.section_note = kSectionNote;
    }
    report.tau = support_product(lat, report.t, chern);
    return report;
}

} // namespace

std::vector<Int> t_vector(const Lattice& lat, const IntCycle& z) {
    if (static_cast<int>(z.size()) != lat.n())
        raise(ErrorCode::GraphMismatch, "cycle length does not match the graph");
    for (long long c : z)
        if (c < 0)
            raise(ErrorCode::PreconditionSupport, "t_vector needs an effective cycle");
    std::vector<Int> t(lat.n());
    // (Z - Z_K, E_v) with (Z_K, E_v) = E_v^2 + 2 by adjunction
    for (int v = 0; v < lat.n(); ++v)
        t[v] = lat.pair_with_vertex(z, v) - (lat.graph().euler[v] + 2);
    return t;
}

TauReport tau_generic(const Lattice& lat, const IntCycle& z, const ChernClass& chern) {
    return tau_whole(lat, z, chern, /*bound_mode=*/false);
}

TauReport tau_upper_bound(const Lattice& lat, const IntCycle& z, const ChernClass& chern) {
    return tau_whole(lat, z, chern, /*bound_mode=*/true);
}

TauReport tau_components(const Lattice& lat, const IntCycle& z, const ChernClass& chern,
                         bool bound_mode) {
    const int n = lat.n();
    if (static_cast<int>(z.size()) != n)
        raise(ErrorCode::GraphMismatch, "cycle length does not match the graph");
    for (long long c : z)
        if (c < 0)
            raise(ErrorCode::PreconditionSupport, "tau_components needs an effective cycle");
    require_minus_cone(chern, "tau_components");
    for (int v : chern.support_star)
        if (z[v] == 0)
            raise(ErrorCode::PreconditionSupport,
                  "the support of l' must lie inside the support of Z");

    TauReport top;
    top.vertex_ids = lat.graph().ids;
    top.t = t_vector(lat, z);
    top.a.assign(chern.pairings.begin(), chern.pairings.end());
    top.mode = bound_mode ? TauMode::StrictUpperBound : TauMode::Equality;
    top.cmin_asserted = bound_mode;

    Int product = 1;
    for (const auto& comp : support_components(lat, z)) {
        // component subgraph with the induced order, cycle and class
        ResolutionGraph sub;
        std::vector<int> back(n, -1);
        for (int v : comp) {
            back[v] = sub.vertex_count();
            sub.ids.push_back(lat.graph().ids[v]);
            sub.euler.push_back(lat.graph().euler[v]);
        }
        for (auto [a, b] : lat.graph().edges)
            if (back[a] >= 0 && back[b] >= 0)
                sub.edges.emplace_back(back[a], back[b]);
        Lattice sublat(sub);

        IntCycle zc(comp.size());
        std::vector<Int> ac(comp.size());
        for (size_t i = 0; i < comp.size(); ++i) {
            zc[i] = z[comp[i]];
            ac[i] = chern.pairings[comp[i]];
        }
        ChernClass chern_c = sublat.to_estar(sublat.chern_from_estar(ac));

        TauReport piece = tau_whole(sublat, zc, chern_c, bound_mode);
        if (!piece.tau)
            raise(ErrorCode::Internal, "component tau carries no value");
        product *= *piece.tau;
        top.per_component.push_back(std::move(piece));
    }

    // the component split only regroups the binomial factors; the direct
    // whole-graph product must match exactly
    Int direct = support_product(lat, top.t, chern);
    if (product != direct)
        raise(ErrorCode::Internal, "component factorization of tau failed");
    top.tau = product;
    if (!bound_mode) {
        top.cmin_checked = true;
        top.dual_dim_claim = h1_oz(lat, z) - 1;
        top.section_note = kSectionNote;
    }
    return top;
}

Int class_relation(const Int& tau, const Int& mu) {
    if (tau < 0 || mu < 0)
        raise(ErrorCode::PreconditionSupport, "cl = mu + tau needs nonnegative inputs");
    return tau + mu;
}

} // namespace singlat
