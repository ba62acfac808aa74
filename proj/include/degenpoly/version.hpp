#pragma once

namespace degenpoly {

inline constexpr const char* kVersion = "1.0.0";

} // namespace degenpoly
