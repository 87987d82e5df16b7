#pragma once

namespace otto {

inline constexpr const char* kToolVersion = "0.1.0";

// Bumped whenever any preset's grid geometry or fixed parameters change,
// so downstream consumers can detect incompatible CSV output.
inline constexpr const char* kPresetVersion = "1";

}  // namespace otto
