#include "singlat/report.hpp"

#include <algorithm>

#include "singlat/config.hpp"

namespace singlat {

Json json_int(const Int& value) {
    if (value.fits_slong_p()) return Json(value.get_si());
    return Json(value.get_str());
}

Json json_rat(const Rat& value) {
    Rat v(value);
    v.canonicalize();
    if (v.get_den() == 1) return json_int(v.get_num());
    Json out;
    out["num"] = json_int(v.get_num());
    out["den"] = json_int(v.get_den());
    return out;
}

Json json_cycle(const std::vector<std::string>& ids, const IntCycle& c) {
    Json out = Json::object();
    for (size_t v = 0; v < ids.size(); ++v) out[ids[v]] = c[v];
    return out;
}

Json json_rat_cycle(const std::vector<std::string>& ids, const RatCycle& c) {
    Json out = Json::object();
    for (size_t v = 0; v < ids.size(); ++v) out[ids[v]] = json_rat(c[v]);
    return out;
}

std::string graph_digest(const ResolutionGraph& g) {
    const std::string text = serialize_graph(g);
    std::uint64_t hash = 1469598103934665603ULL;
    for (unsigned char byte : text) {
        hash ^= byte;
        hash *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return std::string(buf);
}

Json validation_json(const ValidationReport& report) {
    Json out;
    out["ok"] = report.ok;
    Json failures = Json::array();
    for (auto f : report.failures) failures.push_back(validation_failure_name(f));
    out["failures"] = failures;
    return out;
}

Json minimization_json(const Lattice& lat, const MinimizationResult& result) {
    Json out;
    out["min"] = json_rat(result.min_value);
    Json mins = Json::array();
    for (const auto& m : result.minimizers) mins.push_back(json_cycle(lat.graph().ids, m));
    out["minimizers"] = mins;
    switch (result.region.kind) {
        case RegionKind::Box: {
            Json region;
            region["kind"] = "box";
            region["lower"] = json_cycle(lat.graph().ids, result.region.lower);
            region["upper"] = json_cycle(lat.graph().ids, result.region.upper);
            out["region"] = region;
            break;
        }
        case RegionKind::GE0: out["region"] = Json{{"kind", "ge0"}}; break;
        case RegionKind::GT0: out["region"] = Json{{"kind", "gt0"}}; break;
        case RegionKind::All: out["region"] = Json{{"kind", "all"}}; break;
    }
    out["certified"] = result.certified;
    out["points"] = result.points;
    return out;
}

Json tau_json(const TauReport& report) {
    Json out;
    out["mode"] = tau_mode_name(report.mode);
    Json t = Json::object(), a = Json::object();
    for (size_t v = 0; v < report.vertex_ids.size(); ++v) {
        t[report.vertex_ids[v]] = json_int(report.t[v]);
        a[report.vertex_ids[v]] = json_int(report.a[v]);
    }
    out["t"] = t;
    out["a"] = a;
    if (report.tau) out["tau"] = json_int(*report.tau);
    if (report.dual_dim_claim) out["dual_dim_claim"] = json_int(*report.dual_dim_claim);
    out["cmin_checked"] = report.cmin_checked;
    out["cmin_asserted"] = report.cmin_asserted;
    if (!report.section_note.empty()) out["section_note"] = report.section_note;
    if (!report.per_component.empty()) {
        Json comps = Json::array();
        for (const auto& piece : report.per_component) comps.push_back(tau_json(piece));
        out["per_component"] = comps;
    }
    return out;
}

Json error_json(const Error& error) {
    Json out;
    out["error"] = Json{{"code", error_code_name(error.code())}, {"message", error.what()}};
    return out;
}

int exit_code_for(const Error& error) {
    switch (error.code()) {
        case ErrorCode::ParseError:
        case ErrorCode::InvalidGraph:
            return 2;
        case ErrorCode::RegionTooLarge:
            return 3;
        case ErrorCode::CminViolation:
        case ErrorCode::TNegative:
        case ErrorCode::PreconditionSupport:
        case ErrorCode::RationalGraph:
        case ErrorCode::NotInLprime:
        case ErrorCode::ProviderFailure:
        case ErrorCode::GraphMismatch:
            return 4;
        case ErrorCode::NotALattice:
        case ErrorCode::Internal:
            return 5;
    }
    return 5;
}

namespace {

Json inputs_json(const Lattice& lat, const std::optional<IntCycle>& cycle,
                 const std::optional<ChernClass>& chern) {
    Json inputs = Json::object();
    if (cycle) inputs["cycle"] = json_cycle(lat.graph().ids, *cycle);
    if (chern) {
        Json block;
        block["rational"] = json_rat_cycle(lat.graph().ids, chern->as_rational);
        Json pairings = Json::object();
        for (int v = 0; v < lat.n(); ++v)
            pairings[lat.graph().ids[v]] = json_int(chern->pairings[v]);
        block["pairings"] = pairings;
        block["in_minus_lipman"] = chern->in_minus_lipman();
        inputs["chern"] = block;
    }
    return inputs;
}

} // namespace

Json lattice_report(const Lattice& lat, const std::optional<IntCycle>& cycle,
                    const std::optional<ChernClass>& chern) {
    const auto& ids = lat.graph().ids;
    Json out;
    out["graph_digest"] = graph_digest(lat.graph());
    out["inputs"] = inputs_json(lat, cycle, chern);
    out["det_intersection_form"] = json_rat(lat.pairing().det);
    out["zk"] = json_rat_cycle(ids, lat.canonical_cycle());
    Json estar = Json::object();
    for (int v = 0; v < lat.n(); ++v) estar[ids[v]] = json_rat_cycle(ids, lat.dual_basis()[v]);
    out["estar"] = estar;
    if (cycle) {
        out["chi_cycle"] = json_int(lat.chi(*cycle));
        ChernClass as_chern = lat.to_estar(to_rational(*cycle));
        Json pairings = Json::object();
        for (int v = 0; v < lat.n(); ++v) pairings[ids[v]] = json_int(as_chern.pairings[v]);
        out["cycle_pairings"] = pairings;
    }
    if (chern) {
        out["chi_chern"] = json_rat(lat.chi(chern->as_rational));
        out["chern_in_lipman_cone"] = lat.in_lipman_cone(chern->as_rational);
    }
    Json provenance = Json::object();
    provenance["det_intersection_form"] = "FORMULA";
    provenance["zk"] = "FORMULA";
    provenance["estar"] = "FORMULA";
    out["provenance"] = provenance;
    return out;
}

Json invariants_report(const Lattice& lat, const std::optional<IntCycle>& cycle) {
    const auto& ids = lat.graph().ids;
    Json out;
    out["graph_digest"] = graph_digest(lat.graph());
    out["inputs"] = inputs_json(lat, cycle, std::nullopt);

    Json provenance = Json::object();

    Json validation;
    validation["ok"] = true;
    validation["failures"] = Json::array();
    out["validation"] = validation;

    Json lattice_section;
    lattice_section["det_intersection_form"] = json_rat(lat.pairing().det);
    lattice_section["zk"] = json_rat_cycle(ids, lat.canonical_cycle());
    out["lattice"] = lattice_section;
    provenance["lattice.det_intersection_form"] = "FORMULA";
    provenance["lattice.zk"] = "FORMULA";

    Json cycles = Json::object();
    IntCycle zmin = laufer_zmin(lat);
    cycles["zmin"] = json_cycle(ids, zmin);
    bool zmin_both = false;
    try {
        auto oracle = cone_minimum_oracle(lat, zmin);
        if (!oracle || *oracle != zmin)
            raise(ErrorCode::Internal, "Laufer iteration disagrees with the cone oracle");
        zmin_both = true;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::RegionTooLarge) throw;
    }
    provenance["cycles.zmin"] = zmin_both ? "BOTH_AGREE" : "FORMULA";

    Json generic = Json::object();
    bool rational = is_rational_graph(lat);
    generic["rational"] = rational;
    generic["pg"] = json_int(pg(lat));
    provenance["generic.rational"] = "FORMULA";
    provenance["generic.pg"] = "FORMULA";
    if (cycle) {
        generic["h1_oz"] = json_int(h1_oz(lat, *cycle));
        provenance["generic.h1_oz"] = "FORMULA";
    }
    if (!rational) {
        IntCycle mic = maximal_ideal_cycle(lat);
        cycles["max_ideal_cycle"] = json_cycle(ids, mic);
        provenance["cycles.max_ideal_cycle"] = "FORMULA";
    }
    out["cycles"] = cycles;
    out["generic"] = generic;
    out["provenance"] = provenance;
    return out;
}

Json abel_report(const Lattice& lat, const IntCycle& z, const ChernClass& chern) {
    const auto& ids = lat.graph().ids;
    Json out;
    out["graph_digest"] = graph_digest(lat.graph());
    out["inputs"] = inputs_json(lat, z, chern);

    out["eca_nonempty"] = chern.in_minus_lipman();
    out["dim_eca"] = json_int(dim_eca(lat, z, chern));
    CminResult cm = image_dimension(lat, z, chern);
    out["d"] = json_int(cm.d);
    out["cmin"] = json_cycle(ids, cm.cmin);
    out["cmax"] = json_cycle(ids, cm.cmax);
    out["z_equals_cmin"] = cm.z_equals_cmin;
    out["minimizer_count"] = cm.minimizers.size();
    if (!chern.support.empty()) {
        out["e_z_support"] = json_int(e_z(lat, z, chern.support));
    } else {
        out["e_z_support"] = nullptr;
    }
    out["is_dominant"] = is_dominant(lat, z, chern);
    out["h1_generic_pic"] = json_int(h1_generic_pic(lat, z, chern));
    out["h1_generic_abel_image"] = json_int(h1_generic_abel_image(lat, z, chern));

    Json provenance = Json::object();
    for (const char* key : {"dim_eca", "d", "cmin", "cmax", "e_z_support",
                            "h1_generic_pic", "h1_generic_abel_image"})
        provenance[key] = "FORMULA";
    out["provenance"] = provenance;
    return out;
}

namespace {

long long floor_rat(const Rat& q) {
    Int f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return f.get_si();
}

long long ceil_rat(const Rat& q) {
    Int f;
    mpz_cdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return f.get_si();
}

// Integer bound B with B >= sqrt(q) for q >= 0.
long long sqrt_bound(const Rat& q) {
    if (sgn(q) < 0) return 0;
    Int num_ceiling;
    mpz_cdiv_q(num_ceiling.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    Int root;
    mpz_sqrt(root.get_mpz_t(), num_ceiling.get_mpz_t());
    return root.get_si() + 1;
}

// A box guaranteed to contain every minimizer of the certified search:
// coordinate extents of the ellipsoid chi <= min around the continuous
// center, widened by one.
void enclosing_box(const Lattice& lat, const RatCycle& offset, const Rat& min_value,
                   IntCycle& lo, IntCycle& hi) {
    const int n = lat.n();
    const RatCycle& zk = lat.canonical_cycle();
    RatCycle half_zk(n), center(n);
    for (int v = 0; v < n; ++v) {
        half_zk[v] = zk[v] / 2;
        center[v] = zk[v] / 2 - offset[v];
    }
    Rat budget = 2 * (min_value - lat.chi(half_zk));
    lo.resize(n);
    hi.resize(n);
    for (int v = 0; v < n; ++v) {
        // max displacement along coordinate v: sqrt(budget * (-I^{-1})_vv)
        Rat diag = -lat.pairing().inverse[v][v];
        long long bound = sqrt_bound(budget * diag);
        lo[v] = floor_rat(center[v]) - bound;
        hi[v] = ceil_rat(center[v]) + bound;
    }
}

struct CheckLog {
    Json checks = Json::array();
    bool all_ok = true;

    void record(const std::string& name, const std::string& status, Json detail) {
        Json entry;
        entry["name"] = name;
        entry["status"] = status;
        if (!detail.is_null()) entry["detail"] = detail;
        checks.push_back(entry);
        if (status != "AGREE" && status != "REGION_TOO_LARGE") all_ok = false;
    }

    template <typename Fn>
    void run(const std::string& name, Fn&& fn) {
        try {
            fn(*this, name);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::RegionTooLarge)
                record(name, "REGION_TOO_LARGE", Json(e.what()));
            else
                record(name, "ERROR",
                       Json{{"code", error_code_name(e.code())}, {"message", e.what()}});
        }
    }
};

} // namespace

VerifyOutcome verify_oracle(const Lattice& lat, const std::string& scope,
                            const std::optional<IntCycle>& cycle,
                            const std::optional<ChernClass>& chern) {
    const int n = lat.n();
    CheckLog log;
    auto in_scope = [&](const char* name) { return scope == "all" || scope == name; };

    IntCycle zmin = laufer_zmin(lat);

    if (in_scope("zmin")) {
        log.run("zmin_vs_cone_enumeration", [&](CheckLog& cl, const std::string& name) {
            auto oracle = cone_minimum_oracle(lat, zmin);
            bool ok = oracle && *oracle == zmin;
            cl.record(name, ok ? "AGREE" : "DISAGREE",
                      Json{{"laufer", json_cycle(lat.graph().ids, zmin)}});
        });
    }

    if (in_scope("minchi")) {
        RatCycle offset(n, Rat(0));
        if (chern) offset = chern->as_rational;
        for (auto [kind, label] :
             {std::pair{RegionKind::GE0, "ge0"}, {RegionKind::GT0, "gt0"},
              {RegionKind::All, "all"}}) {
            log.run(std::string("minchi_global_vs_box_") + label,
                    [&, kind](CheckLog& cl, const std::string& name) {
                        MinimizationResult global = min_chi_global(lat, offset, kind);
                        IntCycle lo, hi;
                        enclosing_box(lat, offset, global.min_value, lo, hi);
                        if (kind != RegionKind::All)
                            for (int v = 0; v < n; ++v) {
                                lo[v] = std::max<long long>(lo[v], 0);
                                hi[v] = std::max<long long>(hi[v], lo[v]);
                            }
                        MinimizationResult boxed =
                            min_chi_box(lat, offset, lo, hi, kind == RegionKind::GT0);
                        bool ok = boxed.min_value == global.min_value &&
                                  boxed.minimizers == global.minimizers;
                        cl.record(name, ok ? "AGREE" : "DISAGREE",
                                  Json{{"min", json_rat(global.min_value)},
                                       {"minimizers", global.minimizers.size()}});
                    });
        }
    }

    if (in_scope("dz")) {
        log.run("dz_minimizer_lattice", [&](CheckLog& cl, const std::string& name) {
            IntCycle z = (cycle && std::all_of(cycle->begin(), cycle->end(),
                                               [](long long c) { return c >= 1; }))
                             ? *cycle
                             : zmin;
            ChernClass cc = chern ? *chern
                                  : lat.to_estar(lat.chern_from_estar(
                                        std::vector<Int>(n, Int(1))));
            CminResult cm = image_dimension(lat, z, cc); // throws NotALattice on violation
            Int cap = h1_oz(lat, z);
            Int pairing_cap = 0;
            for (int v = 0; v < n; ++v) pairing_cap += cc.pairings[v] * static_cast<long>(z[v]);
            bool ok = cm.d >= 0 && cm.d <= cap && cm.d <= pairing_cap;
            cl.record(name, ok ? "AGREE" : "DISAGREE",
                      Json{{"d", json_int(cm.d)},
                           {"minimizers", cm.minimizers.size()},
                           {"z_equals_cmin", cm.z_equals_cmin}});
        });
    }

    if (in_scope("tau")) {
        log.run("tau_component_factorization", [&](CheckLog& cl, const std::string& name) {
            // restrict a doubled Z_min away from a branching vertex so the
            // support splits, then let the component product check itself
            auto adj = lat.graph().adjacency();
            int cut = -1;
            for (int v = 0; v < n; ++v)
                if (adj[v].size() >= 2) { cut = v; break; }
            IntCycle z(n);
            for (int v = 0; v < n; ++v) z[v] = 2 * zmin[v];
            if (cut >= 0 && n > 1) z[cut] = 0;
            std::vector<Int> t = t_vector(lat, z);
            std::vector<Int> a(n, Int(0));
            for (int v = 0; v < n; ++v)
                if (z[v] > 0 && t[v] >= 1) a[v] = 1;
            ChernClass cc = lat.to_estar(lat.chern_from_estar(a));
            TauReport report = tau_components(lat, z, cc, /*bound_mode=*/true);
            cl.record(name, report.tau ? "AGREE" : "DISAGREE",
                      Json{{"components", report.per_component.size()},
                           {"tau", report.tau ? json_int(*report.tau) : Json(nullptr)}});
        });
    }

    if (in_scope("reldom")) {
        log.run("relative_dominance_vs_dominance", [&](CheckLog& cl, const std::string& name) {
            IntCycle z = (cycle && std::all_of(cycle->begin(), cycle->end(),
                                               [](long long c) { return c >= 1; }))
                             ? *cycle
                             : zmin;
            ChernClass cc = chern ? *chern
                                  : lat.to_estar(lat.chern_from_estar(
                                        std::vector<Int>(n, Int(1))));
            IntCycle z1(n);
            for (int v = 0; v < n; ++v) z1[v] = z[v] / 2;
            ConstantH1Provider zero;
            DominanceResult rel = relative_dominance(lat, z, z1, cc, zero);
            bool plain = is_dominant(lat, z, cc);
            cl.record(name, rel.dominant == plain ? "AGREE" : "DISAGREE",
                      Json{{"dominant", plain}});
        });
    }

    Json report;
    report["graph_digest"] = graph_digest(lat.graph());
    report["scope"] = scope;
    report["checks"] = log.checks;
    report["ok"] = log.all_ok;
    return VerifyOutcome{std::move(report), log.all_ok};
}

} // namespace singlat
