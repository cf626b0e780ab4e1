#pragma once

#include <stdexcept>
#include <string>

namespace tsumlab {

enum class Errc {
    InvalidElement,
    DigitOutOfRange,
    LengthMismatch,
    OrderMismatch,
    InvalidParameters,
    ProbeBudgetExceeded,
    OutOfBoundsProbe,
    GroupTooLarge,
    GroupTooSmall,
    LabelOutOfRange,
    UnsupportedMode,
    ParameterOverflow,
    IncompleteCover,
    DegreeTooSmall,
    EqualHalves,
    OutOfDomain,
    ParseError,
    IoError,
};

inline const char* errc_name(Errc code) noexcept {
    switch (code) {
        case Errc::InvalidElement: return "InvalidElement";
        case Errc::DigitOutOfRange: return "DigitOutOfRange";
        case Errc::LengthMismatch: return "LengthMismatch";
        case Errc::OrderMismatch: return "OrderMismatch";
        case Errc::InvalidParameters: return "InvalidParameters";
        case Errc::ProbeBudgetExceeded: return "ProbeBudgetExceeded";
        case Errc::OutOfBoundsProbe: return "OutOfBoundsProbe";
        case Errc::GroupTooLarge: return "GroupTooLarge";
        case Errc::GroupTooSmall: return "GroupTooSmall";
        case Errc::LabelOutOfRange: return "LabelOutOfRange";
        case Errc::UnsupportedMode: return "UnsupportedMode";
        case Errc::ParameterOverflow: return "ParameterOverflow";
        case Errc::IncompleteCover: return "IncompleteCover";
        case Errc::DegreeTooSmall: return "DegreeTooSmall";
        case Errc::EqualHalves: return "EqualHalves";
        case Errc::OutOfDomain: return "OutOfDomain";
        case Errc::ParseError: return "ParseError";
        case Errc::IoError: return "IoError";
    }
    return "Unknown";
}

/// Single exception type for the library; `code()` identifies the failure class.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace tsumlab
