#pragma once

namespace oplab {

inline constexpr const char* version = "0.1.0";

} // namespace oplab
