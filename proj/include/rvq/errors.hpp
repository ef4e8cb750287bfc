#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rvq {

enum class ErrorCode {
  MalformedText,
  LetterCountError,
  EmptyRow,
  MoveUndefined,
  BudgetExceeded,
  ReducibleSeed,
  InconsistentGenus,
  NotOmegaPreserving,
  ReverseArrowAmbiguous,
  ReverseArrowMissing,
  DuplicateWinner,
  IllegalPosition,
  AlphabetMismatch,
  NotSplittable,
  OrbitTooSmall,
  ParityError,
  CaseUnmatched,
  ConventionViolated,
  CriterionInapplicable,
  UnknownLabel,
  OutOfRange,
  NonSymplecticGenerator,
  NonDividingOrder,
  CacheCorrupt,
};

std::string_view error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rvq
