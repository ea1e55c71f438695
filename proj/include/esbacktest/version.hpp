#pragma once

namespace esbacktest {

inline constexpr const char* kVersion = "0.1.0";

} // namespace esbacktest
