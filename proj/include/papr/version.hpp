#pragma once

namespace papr {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace papr
