#pragma once

namespace qinv {

inline constexpr const char* kToolVersion = "1.0.0";

}  // namespace qinv
