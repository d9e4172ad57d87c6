#pragma once

#include <stdexcept>
#include <string>

namespace geodiam {

enum class ErrorCode {
  InvalidArgument,
  DegenerateInput,
  OffSurface,
  NotSymmetric,
  SymmetryViolation,
  BudgetExceeded,
  InvolutionCheckFailed,
  SimplicityViolation,
  RegionCountViolation,
  SwapViolation,
  InvalidSpace,
  ParseError,
  IoError,
  Internal,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace geodiam
