#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lnre {

enum class Errc {
    InvalidParams,
    InvalidTuning,
    TuningOutOfRange,
    SupportMismatch,
    QuadratureFailure,
    NonIntegrable,
    LogOfNonPositive,
    OutsideSupport,
    DegenerateSample,
    AllOutsideSupport,
    EnumerationTooLarge,
    DegenerateNormalizer,
    ZeroHbar,
    ZeroMassCell,
    StepTooLarge,
    EmptyInput,
    NoFeasibleCell,
    ParseError,
    EmptyFile,
    ReplicateFailure
};

inline std::string_view errc_name(Errc c) {
    switch (c) {
    case Errc::InvalidParams: return "InvalidParams";
    case Errc::InvalidTuning: return "InvalidTuning";
    case Errc::TuningOutOfRange: return "TuningOutOfRange";
    case Errc::SupportMismatch: return "SupportMismatch";
    case Errc::QuadratureFailure: return "QuadratureFailure";
    case Errc::NonIntegrable: return "NonIntegrable";
    case Errc::LogOfNonPositive: return "LogOfNonPositive";
    case Errc::OutsideSupport: return "OutsideSupport";
    case Errc::DegenerateSample: return "DegenerateSample";
    case Errc::AllOutsideSupport: return "AllOutsideSupport";
    case Errc::EnumerationTooLarge: return "EnumerationTooLarge";
    case Errc::DegenerateNormalizer: return "DegenerateNormalizer";
    case Errc::ZeroHbar: return "ZeroHbar";
    case Errc::ZeroMassCell: return "ZeroMassCell";
    case Errc::StepTooLarge: return "StepTooLarge";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::NoFeasibleCell: return "NoFeasibleCell";
    case Errc::ParseError: return "ParseError";
    case Errc::EmptyFile: return "EmptyFile";
    case Errc::ReplicateFailure: return "ReplicateFailure";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

} // namespace lnre
