#pragma once

#include <stdexcept>
#include <string>

namespace abundle {

// Error codes mirror the status values exposed through the C API.
enum class ErrorCode {
  InvalidArgument = 1,
  NotPositive,
  NotInvertible,
  DomainEscape,
  MalformedIdempotent,
  ModuleMismatch,
  Degenerate,
  PivotNotInvertible,
  NotAutomorphism,
  NormalizerNotInvertible,
  NotReduced,
  ChartMismatch,
  FrameUnavailable,
  UnknownFixture,
  ParseError,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace abundle
