#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace semdex::csv {

/// Doubles with 17 significant digits so CSV values round-trip exactly.
std::string format_double(double v);

/// FNV-1a 64-bit, used for config provenance hashes.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);

} // namespace semdex::csv
