#pragma once

#define AROC_VERSION_MAJOR 0
#define AROC_VERSION_MINOR 1
#define AROC_VERSION_PATCH 0

namespace aroc {

inline constexpr const char* version_string = "0.1.0";

}  // namespace aroc
