#pragma once

namespace nodalsl {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace nodalsl
