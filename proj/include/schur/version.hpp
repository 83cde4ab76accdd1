#pragma once

namespace schur {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace schur
