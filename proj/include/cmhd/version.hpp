#pragma once

namespace cmhd {
inline constexpr const char* kVersion = "0.1.0";
}
