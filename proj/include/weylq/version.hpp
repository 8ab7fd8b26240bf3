#pragma once

namespace weylq {

inline constexpr const char* kVersion = "weylq 0.1.0";

}  // namespace weylq
