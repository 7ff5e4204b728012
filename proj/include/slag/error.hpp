#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace slag {

enum class ErrorCode {
  InvalidArgument,
  NegativeS,
  DegenerateBranch,
  DomainMismatch,
  SingularParameters,
  NoConvergence,
  DegeneracyEncountered,
  SingularPoint,
  ZeroRadius,
  RankDeficient,
  NonpositiveAlpha,
  DegenerateRegion,
  YZero,
  ZeroOnLoop,
  UnderSampled,
  NonIntegerWinding,
  OutOfDomain,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every library failure is reported as an Error carrying a code the caller can
// switch on; the message is for humans only.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace slag
