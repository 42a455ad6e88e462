#pragma once

namespace rmkit {

inline constexpr const char* RMKIT_VERSION = "0.1.0";

}  // namespace rmkit
