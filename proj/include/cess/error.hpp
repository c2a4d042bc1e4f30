#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cess {

enum class ErrorCode {
  ModulusMismatch,
  DivisionByZero,
  NotPrime,
  DuplicateAbscissa,
  IncompleteTail,
  DuplicateAlpha,
  ZeroAlpha,
  DimensionMismatch,
  SingularMatrix,
  SingularSystem,
  InconsistentSystem,
  IndexOutOfBounds,
  InvalidParams,
  InvalidD,
  MissingMinimalD,
  UnsupportedD,
  LengthMismatch,
  DuplicateNode,
  InconsistentShares,
  NotAuthorized,
  FieldTooSmall,
  InvalidBeta,
  TooManyErasures,
  BudgetExceeded,
  HeaderMismatch,
  MalformedShare,
  InputTooLarge,
  IoError,
};

std::string_view to_string(ErrorCode code);

// Every failure surfaced by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cess
