#pragma once

namespace toeptrace {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace toeptrace
