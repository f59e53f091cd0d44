#pragma once

#include <json.hpp>

#include <optional>
#include <string>

#include "singlat/abel.hpp"
#include "singlat/cycle_search.hpp"
#include "singlat/errors.hpp"
#include "singlat/generic.hpp"
#include "singlat/tau.hpp"

namespace singlat {

using Json = nlohmann::ordered_json;

// Exact JSON values: integers as JSON numbers when they fit, decimal strings
// otherwise; non-integer rationals as {"num": ..., "den": ...}. Never a float.
Json json_int(const Int& value);
Json json_rat(const Rat& value);
Json json_cycle(const std::vector<std::string>& ids, const IntCycle& c);
Json json_rat_cycle(const std::vector<std::string>& ids, const RatCycle& c);

// FNV-1a 64 of the canonical graph serialization, as 16 hex digits.
std::string graph_digest(const ResolutionGraph& g);

Json validation_json(const ValidationReport& report);
Json minimization_json(const Lattice& lat, const MinimizationResult& result);
Json tau_json(const TauReport& report);
Json error_json(const Error& error);
int exit_code_for(const Error& error);

// Section assembly for the CLI.
Json lattice_report(const Lattice& lat, const std::optional<IntCycle>& cycle,
                    const std::optional<ChernClass>& chern);
Json invariants_report(const Lattice& lat, const std::optional<IntCycle>& cycle);
Json abel_report(const Lattice& lat, const IntCycle& z, const ChernClass& chern);

struct VerifyOutcome {
    Json report;
    bool all_ok = true;
};

// Formula/oracle agreement suite: Z_min vs cone enumeration, certified global
// minima vs box oracles, image-dimension lattice closure, tau factorization,
// relative dominance vs plain dominance. Region overflows are reported per
// check; the suite keeps going.
VerifyOutcome verify_oracle(const Lattice& lat, const std::string& scope,
                            const std::optional<IntCycle>& cycle,
                            const std::optional<ChernClass>& chern);

} // namespace singlat
