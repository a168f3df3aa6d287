#pragma once

namespace psbound {

inline constexpr const char* kVersion = "0.1.0";

} // namespace psbound
