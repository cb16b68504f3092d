#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gapbasis {

enum class ErrorCode {
  EqualNodes,
  BadPermutation,
  DimensionMismatch,
  NotAnNGap,
  PsiDomain,
  InvalidType,
  InvalidReduction,
  InvalidGapFunction,
  Condition1Violated,
  TraceMismatch,
  TooSmallN,
  BadDirection,
  TooSmall,
  BadAlphabet,
  CorruptCache,
  InvalidInput,
};

std::string_view to_string(ErrorCode code);

class GapError : public std::runtime_error {
 public:
  GapError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gapbasis
