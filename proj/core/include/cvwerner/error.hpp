#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cvwerner {

enum class ErrorCode {
  ParamOutOfRange,
  DimensionMismatch,
  NonHermitianInput,
  NotAState,
  DegenerateRatio,
  CutoffTooSmall,
  BadPhaseIndex,
  DegenerateKernel,
  NotProvablySeparable,
  DegenerateOutcome,
  NoSignChange,
  ResourceLimit,
  MalformedInput,
};

std::string_view to_string(ErrorCode code) noexcept;

// All library failures surface as this exception; code() names the
// violated contract, what() carries the offending values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace cvwerner
