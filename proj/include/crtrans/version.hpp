#pragma once

namespace crtrans {

inline constexpr const char* kVersion = "0.1.0";

} // namespace crtrans
