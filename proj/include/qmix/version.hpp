#pragma once

#include <string_view>

namespace qmix {

inline constexpr std::string_view library_name = "qmix";
inline constexpr std::string_view library_version = "0.1.0";

}  // namespace qmix
