#include <CLI11.hpp>
#include <omp.h>

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "singlat/config.hpp"
#include "singlat/report.hpp"

namespace {

using namespace singlat;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorCode::ParseError, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// "v1=2,v2=-1": vertex ids to integers, unmentioned vertices are zero.
IntCycle parse_cycle_spec(const ResolutionGraph& g, const std::string& spec) {
    IntCycle out(g.vertex_count(), 0);
    if (spec.empty()) return out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            raise(ErrorCode::ParseError, "cycle entry \"" + item + "\" is not id=integer");
        std::string id = item.substr(0, eq);
        int v = g.index_of(id);
        if (v < 0) raise(ErrorCode::ParseError, "unknown vertex id \"" + id + "\"");
        try {
            size_t used = 0;
            long long value = std::stoll(item.substr(eq + 1), &used);
            if (used != item.size() - eq - 1)
                raise(ErrorCode::ParseError, "bad integer in \"" + item + "\"");
            out[v] = value;
        } catch (const std::logic_error&) {
            raise(ErrorCode::ParseError, "bad integer in \"" + item + "\"");
        }
    }
    return out;
}

ChernClass parse_chern_spec(const Lattice& lat, const std::string& spec) {
    IntCycle a = parse_cycle_spec(lat.graph(), spec);
    std::vector<Int> coeffs(lat.n());
    for (int v = 0; v < lat.n(); ++v) {
        if (a[v] < 0)
            raise(ErrorCode::ParseError,
                  "Chern coefficients are E*-coordinates and must be nonnegative");
        coeffs[v] = static_cast<long>(a[v]);
    }
    return lat.to_estar(lat.chern_from_estar(coeffs));
}

std::map<std::string, Int> parse_h1_table(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        raise(ErrorCode::ParseError, std::string("h1 table is not valid JSON: ") + e.what());
    }
    if (!doc.is_object())
        raise(ErrorCode::ParseError, "h1 table must be an object of cycle -> integer");
    std::map<std::string, Int> table;
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        if (!it.value().is_number_integer())
            raise(ErrorCode::ParseError, "h1 table values must be integers");
        table[it.key()] = Int(static_cast<long>(it.value().get<long long>()));
    }
    return table;
}

void emit(const Json& doc) { std::cout << doc.dump(2) << "\n"; }

struct Options {
    std::string graph_path;
    std::string cycle_spec, chern_spec, z1_spec;
    std::string lower_spec, upper_spec;
    std::string region = "ge0";
    std::string mode = "generic";
    std::string provider = "generic";
    std::string h1_table_path;
    std::string scope = "all";
    long long mu = -1;
    std::uint64_t enum_limit_flag = 0;
    int threads = 0;
    bool json = true;
    bool has_cycle = false, has_chern = false, has_z1 = false;
};

ResolutionGraph load_graph(const Options& opt) {
    return parse_graph(read_file(opt.graph_path));
}

// Shared prologue of every mathematical subcommand: the graph must validate.
Lattice load_lattice(const Options& opt) {
    ResolutionGraph g = load_graph(opt);
    ValidationReport vr = validate(g);
    if (!vr.ok) {
        Json out;
        out["graph_digest"] = graph_digest(g);
        out["validation"] = validation_json(vr);
        emit(out);
        std::string names;
        for (auto f : vr.failures) {
            names += ' ';
            names += validation_failure_name(f);
        }
        raise(ErrorCode::InvalidGraph, "graph failed validation:" + names);
    }
    return Lattice(std::move(g));
}

int cmd_validate(const Options& opt) {
    ResolutionGraph g = load_graph(opt);
    ValidationReport vr = validate(g);
    Json out;
    out["graph_digest"] = graph_digest(g);
    out["validation"] = validation_json(vr);
    emit(out);
    if (!vr.ok) {
        std::cerr << "graph failed validation\n";
        return 2;
    }
    return 0;
}

int cmd_lattice(const Options& opt) {
    Lattice lat = load_lattice(opt);
    std::optional<IntCycle> cycle;
    std::optional<ChernClass> chern;
    if (opt.has_cycle) cycle = parse_cycle_spec(lat.graph(), opt.cycle_spec);
    if (opt.has_chern) chern = parse_chern_spec(lat, opt.chern_spec);
    emit(lattice_report(lat, cycle, chern));
    return 0;
}

int cmd_zmin(const Options& opt) {
    Lattice lat = load_lattice(opt);
    IntCycle zmin = laufer_zmin(lat);
    Json out;
    out["graph_digest"] = graph_digest(lat.graph());
    out["zmin"] = json_cycle(lat.graph().ids, zmin);
    std::string provenance = "FORMULA";
    try {
        auto oracle = cone_minimum_oracle(lat, zmin);
        if (!oracle || *oracle != zmin)
            raise(ErrorCode::Internal, "Laufer iteration disagrees with the cone oracle");
        provenance = "BOTH_AGREE";
    } catch (const Error& e) {
        if (e.code() != ErrorCode::RegionTooLarge) throw;
    }
    out["provenance"] = Json{{"zmin", provenance}};
    emit(out);
    return 0;
}

int cmd_minchi(const Options& opt) {
    Lattice lat = load_lattice(opt);
    RatCycle offset(lat.n(), Rat(0));
    std::optional<ChernClass> chern;
    if (opt.has_chern) {
        chern = parse_chern_spec(lat, opt.chern_spec);
        offset = chern->as_rational;
    }
    MinimizationResult result;
    if (opt.region == "box") {
        IntCycle lower = parse_cycle_spec(lat.graph(), opt.lower_spec);
        IntCycle upper = parse_cycle_spec(lat.graph(), opt.upper_spec);
        result = min_chi_box(lat, offset, lower, upper);
    } else if (opt.region == "ge0" || opt.region == "gt0" || opt.region == "all") {
        RegionKind kind = opt.region == "ge0"   ? RegionKind::GE0
                          : opt.region == "gt0" ? RegionKind::GT0
                                                : RegionKind::All;
        result = min_chi_global(lat, offset, kind);
    } else {
        raise(ErrorCode::ParseError, "--region must be ge0, gt0, all or box");
    }
    Json out;
    out["graph_digest"] = graph_digest(lat.graph());
    out["inputs"] = Json{{"region", opt.region}};
    if (chern) out["inputs"]["chern"] = json_rat_cycle(lat.graph().ids, chern->as_rational);
    out["minimization"] = minimization_json(lat, result);
    emit(out);
    return 0;
}

int cmd_invariants(const Options& opt) {
    Lattice lat = load_lattice(opt);
    std::optional<IntCycle> cycle;
    if (opt.has_cycle) cycle = parse_cycle_spec(lat.graph(), opt.cycle_spec);
    emit(invariants_report(lat, cycle));
    return 0;
}

int cmd_abel(const Options& opt) {
    Lattice lat = load_lattice(opt);
    if (!opt.has_cycle || !opt.has_chern)
        raise(ErrorCode::ParseError, "abel needs --cycle and --chern");
    IntCycle z = parse_cycle_spec(lat.graph(), opt.cycle_spec);
    ChernClass chern = parse_chern_spec(lat, opt.chern_spec);
    Json out = abel_report(lat, z, chern);

    if (opt.has_z1) {
        IntCycle z1 = parse_cycle_spec(lat.graph(), opt.z1_spec);
        std::unique_ptr<H1Provider> provider;
        if (opt.provider == "generic") {
            provider = std::make_unique<GenericH1Provider>();
        } else if (opt.provider == "zero") {
            provider = std::make_unique<ConstantH1Provider>(0);
        } else if (opt.provider == "table") {
            if (opt.h1_table_path.empty())
                raise(ErrorCode::ParseError, "provider \"table\" needs --h1-table PATH");
            provider = std::make_unique<TableH1Provider>(
                parse_h1_table(read_file(opt.h1_table_path)));
        } else {
            raise(ErrorCode::ParseError, "--provider must be generic, zero or table");
        }
        DominanceResult rel = relative_dominance(lat, z, z1, chern, *provider);
        Json relative;
        relative["z1"] = json_cycle(lat.graph().ids, z1);
        relative["provider"] = opt.provider;
        relative["dominant"] = rel.dominant;
        if (rel.witness) relative["witness"] = json_cycle(lat.graph().ids, *rel.witness);
        relative["h1_relative_generic"] =
            json_int(h1_relative_generic(lat, z, z1, chern, *provider));
        out["relative"] = relative;
    }
    emit(out);
    return 0;
}

int cmd_tau(const Options& opt) {
    Lattice lat = load_lattice(opt);
    if (!opt.has_cycle || !opt.has_chern)
        raise(ErrorCode::ParseError, "tau needs --cycle and --chern");
    IntCycle z = parse_cycle_spec(lat.graph(), opt.cycle_spec);
    ChernClass chern = parse_chern_spec(lat, opt.chern_spec);
    bool bound_mode;
    if (opt.mode == "generic")
        bound_mode = false;
    else if (opt.mode == "bound")
        bound_mode = true;
    else
        raise(ErrorCode::ParseError, "--mode must be generic or bound");

    TauReport report = tau_components(lat, z, chern, bound_mode);
    Json out;
    out["graph_digest"] = graph_digest(lat.graph());
    out["inputs"] = Json{{"cycle", json_cycle(lat.graph().ids, z)},
                         {"chern", json_rat_cycle(lat.graph().ids, chern.as_rational)},
                         {"mode", opt.mode}};
    out["tau"] = tau_json(report);
    if (opt.mu >= 0 && report.tau) {
        out["mu"] = opt.mu;
        out["cl"] = json_int(class_relation(*report.tau, Int(static_cast<long>(opt.mu))));
    }
    emit(out);
    return 0;
}

int cmd_verify(const Options& opt) {
    Lattice lat = load_lattice(opt);
    std::optional<IntCycle> cycle;
    std::optional<ChernClass> chern;
    if (opt.has_cycle) cycle = parse_cycle_spec(lat.graph(), opt.cycle_spec);
    if (opt.has_chern) chern = parse_chern_spec(lat, opt.chern_spec);
    VerifyOutcome outcome = verify_oracle(lat, opt.scope, cycle, chern);
    emit(outcome.report);
    if (!outcome.all_ok) {
        std::cerr << "formula/oracle disagreement\n";
        return 5;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact invariants of resolution graphs of normal surface singularities"};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* sub, bool needs_graph = true) {
        if (needs_graph) sub->add_option("--graph", opt.graph_path, "graph file")->required();
        sub->add_option("--enum-limit", opt.enum_limit_flag,
                        "max lattice points per enumeration");
        sub->add_option("--threads", opt.threads, "OpenMP thread count");
        sub->add_flag("--json", opt.json, "machine JSON on stdout (default)");
    };

    auto* validate_cmd = app.add_subcommand("validate", "tree + negative definiteness");
    add_common(validate_cmd);

    auto* lattice_cmd = app.add_subcommand("lattice", "Z_K, dual basis, det, chi");
    add_common(lattice_cmd);
    lattice_cmd->add_option("--cycle", opt.cycle_spec, "cycle in E-coordinates")
        ->each([&](const std::string&) { opt.has_cycle = true; });
    lattice_cmd->add_option("--chern", opt.chern_spec, "class in E*-coordinates")
        ->each([&](const std::string&) { opt.has_chern = true; });

    auto* zmin_cmd = app.add_subcommand("zmin", "fundamental cycle");
    add_common(zmin_cmd);

    auto* minchi_cmd = app.add_subcommand("minchi", "minimize chi over a region");
    add_common(minchi_cmd);
    minchi_cmd->add_option("--chern", opt.chern_spec, "offset class in E*-coordinates")
        ->each([&](const std::string&) { opt.has_chern = true; });
    minchi_cmd->add_option("--region", opt.region, "ge0|gt0|all|box");
    minchi_cmd->add_option("--lower", opt.lower_spec, "box lower corner");
    minchi_cmd->add_option("--upper", opt.upper_spec, "box upper corner");

    auto* invariants_cmd = app.add_subcommand("invariants", "rationality, pg, Z_min, ...");
    add_common(invariants_cmd);
    invariants_cmd->add_option("--cycle", opt.cycle_spec, "cycle for h1_oz")
        ->each([&](const std::string&) { opt.has_cycle = true; });

    auto* abel_cmd = app.add_subcommand("abel", "image dimension and h1 values");
    add_common(abel_cmd);
    abel_cmd->add_option("--cycle", opt.cycle_spec, "cycle Z >= E")
        ->each([&](const std::string&) { opt.has_cycle = true; });
    abel_cmd->add_option("--chern", opt.chern_spec, "class in E*-coordinates")
        ->each([&](const std::string&) { opt.has_chern = true; });
    abel_cmd->add_option("--z1", opt.z1_spec, "subcycle for the relative engines")
        ->each([&](const std::string&) { opt.has_z1 = true; });
    abel_cmd->add_option("--provider", opt.provider, "h1 provider: generic|zero|table");
    abel_cmd->add_option("--h1-table", opt.h1_table_path, "JSON table for provider=table");

    auto* tau_cmd = app.add_subcommand("tau", "binomial product invariant");
    add_common(tau_cmd);
    tau_cmd->add_option("--cycle", opt.cycle_spec, "cycle Z")
        ->each([&](const std::string&) { opt.has_cycle = true; });
    tau_cmd->add_option("--chern", opt.chern_spec, "class in E*-coordinates")
        ->each([&](const std::string&) { opt.has_chern = true; });
    tau_cmd->add_option("--mode", opt.mode, "generic|bound");
    tau_cmd->add_option("--mu", opt.mu, "multiplicity of the infinite hyperplane");

    auto* verify_cmd = app.add_subcommand("verify", "formula vs oracle agreement");
    add_common(verify_cmd);
    verify_cmd->add_option("--scope", opt.scope, "all|zmin|minchi|dz|tau|reldom");
    verify_cmd->add_option("--cycle", opt.cycle_spec, "cycle override")
        ->each([&](const std::string&) { opt.has_cycle = true; });
    verify_cmd->add_option("--chern", opt.chern_spec, "class override")
        ->each([&](const std::string&) { opt.has_chern = true; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        std::cout << Json{{"error", {{"code", "USAGE"}, {"message", e.what()}}}}.dump(2)
                  << "\n";
        std::cerr << e.what() << "\n";
        return 1;
    }

    if (opt.enum_limit_flag > 0) singlat::set_enum_limit(opt.enum_limit_flag);
    if (opt.threads > 0) omp_set_num_threads(opt.threads);

    try {
        if (validate_cmd->parsed()) return cmd_validate(opt);
        if (lattice_cmd->parsed()) return cmd_lattice(opt);
        if (zmin_cmd->parsed()) return cmd_zmin(opt);
        if (minchi_cmd->parsed()) return cmd_minchi(opt);
        if (invariants_cmd->parsed()) return cmd_invariants(opt);
        if (abel_cmd->parsed()) return cmd_abel(opt);
        if (tau_cmd->parsed()) return cmd_tau(opt);
        if (verify_cmd->parsed()) return cmd_verify(opt);
    } catch (const singlat::Error& e) {
        if (e.code() != ErrorCode::InvalidGraph) emit(error_json(e));
        std::cerr << error_code_name(e.code()) << ": " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cout << Json{{"error", {{"code", "INTERNAL"}, {"message", e.what()}}}}.dump(2)
                  << "\n";
        std::cerr << "internal error: " << e.what() << "\n";
        return 5;
    }
    return 1;
}
