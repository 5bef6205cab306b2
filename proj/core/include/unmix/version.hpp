#pragma once

namespace unmix {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace unmix
