#pragma once

namespace varunc {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace varunc
