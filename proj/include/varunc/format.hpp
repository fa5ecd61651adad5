#pragma once

#include <charconv>
#include <cmath>
#include <string>
#include <system_error>

namespace varunc {

/// Shortest round-trip decimal form; identical bytes for identical doubles.
inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

/// Fixed notation with `digits` decimals, for human-facing tables.
inline std::string format_fixed(double v, int digits) {
    if (!std::isfinite(v)) return format_double(v);
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, digits);
    return std::string(buf, res.ptr);
}

}  // namespace varunc
