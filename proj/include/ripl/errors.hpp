#pragma once

#include <stdexcept>
#include <string>

namespace ripl {

enum class ErrorCode {
  M0NotZero,
  BoundaryNotIncreasing,
  BudgetExceedsLevelWidth,
  PatternDoesNotCover,
  EpsilonOutOfRange,
  LengthMismatch,
  DimensionMismatch,
  NotPowerOfTwo,
  LengthNotDivisible,
  IndexOutOfRange,
  BandOverflow,
  TooLarge,
  EnumerationTooLarge,
  InfiniteRatio,
  KernelTooLarge,
  RhoOutOfRange,
  WeightBelowOne,
  NotSorted,
  ParameterOrder,
  ParameterInfeasible,
  MoverInfeasible,
  UnsupportedFormat,
  CorruptFile,
  ConfigError,
  Infeasible,
};

const char* error_code_name(ErrorCode code);

/// Library-wide exception carrying a machine-checkable code.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace ripl
