#pragma once

namespace hoprank {

inline constexpr const char* kToolName = "hoprank";
inline constexpr const char* kVersion = "0.1.0";

} // namespace hoprank
