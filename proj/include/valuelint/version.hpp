#pragma once

namespace valuelint {

inline constexpr const char* kToolName = "valuelint";
inline constexpr const char* kToolVersion = "0.1.0";

} // namespace valuelint
