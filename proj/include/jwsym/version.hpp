#pragma once

namespace jwsym {

inline constexpr const char* kToolName = "jwsym";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace jwsym
