#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace salat {

enum class ErrorKind {
  SingularMatrix,
  RankDeficient,
  BothZero,
  HypothesisViolated,
  NoSolution,
  TooLarge,
  SearchCapExceeded,
  DimensionTooSmall,
  InvalidInstance,
  TargetDenominatorTooLarge,
  BudgetExceeded,
  ModeUnavailable,
  Parse,
};

std::string_view to_string(ErrorKind kind);

/// Every mathematical failure in the library is reported through this type;
/// `kind()` lets callers (and the CLI) branch without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace salat
