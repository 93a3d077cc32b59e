#pragma once

#include <string>

namespace hoprank {

/// Shortest decimal form that round-trips a double exactly (17 significant
/// digits via %.17g). Used wherever output must reproduce bit-identically.
std::string format_g17(double v);

/// %.*g with the given significant digits, for human-facing tables.
std::string format_sig(double v, int digits);

} // namespace hoprank
