#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace carpet {

enum class ErrorCode {
  BaseOrder,
  DigitRange,
  DuplicateDigit,
  TrivialCarpet,
  MalformedInput,
  LengthMismatch,
  NotAdmissible,
  NotUniform,
  NotInHypothesis,
  DepthBudgetExceeded,
  IndistinguishableAtDepth,
  ZeroGap,
  DepthNotMultiple,
  NoSuchP,
  InfeasibleSplit,
  InfeasiblePartition,
  L0Exceeded,
  DegenerateSample,
  OutsideClass,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace carpet
