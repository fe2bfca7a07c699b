#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace isochrone {

enum class Errc {
    NonHomogeneous,
    NonzeroMean,
    IdenticallyZero,
    EmptyRadial,
    ZeroRadial,
    IdentityViolation,
    OutsideValidInterval,
    NotACenter,
    ZeroTopPart,
    ZeroInput,
    Parse,
    InvalidArgument,
};

std::string_view to_string(Errc code);

/// Error raised by every analysis routine; `code()` tells callers which
/// precondition or consistency check failed.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

inline std::string_view to_string(Errc code) {
    switch (code) {
    case Errc::NonHomogeneous: return "NonHomogeneous";
    case Errc::NonzeroMean: return "NonzeroMean";
    case Errc::IdenticallyZero: return "IdenticallyZero";
    case Errc::EmptyRadial: return "EmptyRadial";
    case Errc::ZeroRadial: return "ZeroRadial";
    case Errc::IdentityViolation: return "IdentityViolation";
    case Errc::OutsideValidInterval: return "OutsideValidInterval";
    case Errc::NotACenter: return "NotACenter";
    case Errc::ZeroTopPart: return "ZeroTopPart";
    case Errc::ZeroInput: return "ZeroInput";
    case Errc::Parse: return "ParseError";
    case Errc::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

} // namespace isochrone
