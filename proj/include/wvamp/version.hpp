#pragma once

#include <string_view>

namespace wvamp {

inline constexpr std::string_view kVersion = "0.1.0";
inline constexpr std::string_view kName = "wvamp";

}  // namespace wvamp
