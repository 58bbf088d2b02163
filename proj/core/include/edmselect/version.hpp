#pragma once

namespace edmselect {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace edmselect
