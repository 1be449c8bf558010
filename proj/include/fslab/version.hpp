#pragma once

namespace fslab {

inline constexpr const char* kVersion = "0.1.0";

} // namespace fslab
