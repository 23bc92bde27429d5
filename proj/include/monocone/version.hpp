#pragma once

namespace monocone {

inline constexpr const char* kToolName = "monocone";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kCsvSchemaVersion = "1";

}  // namespace monocone
