#include "cvwerner/error.hpp"

namespace cvwerner {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParamOutOfRange: return "ParamOutOfRange";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonHermitianInput: return "NonHermitianInput";
    case ErrorCode::NotAState: return "NotAState";
    case ErrorCode::DegenerateRatio: return "DegenerateRatio";
    case ErrorCode::CutoffTooSmall: return "CutoffTooSmall";
    case ErrorCode::BadPhaseIndex: return "BadPhaseIndex";
    case ErrorCode::DegenerateKernel: return "DegenerateKernel";
    case ErrorCode::NotProvablySeparable: return "NotProvablySeparable";
    case ErrorCode::DegenerateOutcome: return "DegenerateOutcome";
    case ErrorCode::NoSignChange: return "NoSignChange";
    case ErrorCode::ResourceLimit: return "ResourceLimit";
    case ErrorCode::MalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace cvwerner
