#pragma once

namespace fuzzident {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace fuzzident
