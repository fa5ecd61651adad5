#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace varunc {

enum class ErrorCode : std::uint8_t {
    Validation = 1,
    DimensionMismatch,
    CannotSpread,
    InfeasibleShift,
    ConstrainedMaximum,
    UnsupportedDimension,
    UnknownId,
    Schema,
    Divergence,
    Io,
};

inline const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::Validation: return "validation";
        case ErrorCode::DimensionMismatch: return "dimension-mismatch";
        case ErrorCode::CannotSpread: return "cannot-spread";
        case ErrorCode::InfeasibleShift: return "infeasible-shift";
        case ErrorCode::ConstrainedMaximum: return "constrained-maximum";
        case ErrorCode::UnsupportedDimension: return "unsupported-dimension";
        case ErrorCode::UnknownId: return "unknown-id";
        case ErrorCode::Schema: return "schema";
        case ErrorCode::Divergence: return "divergence";
        case ErrorCode::Io: return "io";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

#define VARUNC_REQUIRE(cond, code, msg)                 \
    do {                                                \
        if (!(cond)) throw ::varunc::Error((code), (msg)); \
    } while (false)

}  // namespace varunc
