#pragma once

namespace logwave {
inline constexpr const char* kVersion = "0.1.0";
}
