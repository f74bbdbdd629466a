#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace combandit {

enum class ErrorCode {
  DuplicateArm,
  OutOfRange,
  WrongArity,
  UnsupportedCombination,
  TooLarge,
  InvalidDims,
  InvalidEnvironment,
  Degenerate,
  BudgetExhausted,
  TooManyActions,
  Config,
  Io,
};

std::string_view to_string(ErrorCode code);

// Every library failure carries a machine-checkable code.
class BanditError : public std::runtime_error {
 public:
  BanditError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace combandit
