#pragma once

#include <cstdint>

namespace singlat {

// Hard cap on the number of lattice points any single enumeration may visit.
// Default 10^7, overridable with the SINGLAT_ENUM_LIMIT environment variable
// or per-invocation via set_enum_limit (CLI flag wins over the env var).
std::uint64_t enum_limit();
void set_enum_limit(std::uint64_t limit);
void reset_enum_limit();

} // namespace singlat
