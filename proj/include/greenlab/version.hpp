#pragma once

namespace greenlab {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace greenlab
