#pragma once

namespace mlcc {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace mlcc
