#pragma once

namespace vred {

inline constexpr const char* version = "0.1.0";

}  // namespace vred
