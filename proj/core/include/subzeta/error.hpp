#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace subzeta {

enum class ErrorKind {
  InvalidArgument,
  SyntaxError,
  VariableOutOfRange,
  NegativeExponent,
  DimensionMismatch,
  ZeroPolynomial,
  UndefinedForZero,
  EvenPrimeUnsupported,
  ModulusTooLarge,
  NonUnitArgument,
  TrivialCharacter,
  BudgetExceeded,
  BadReductionInput,
  RankDeficient,
  NotOnVariety,
  GoodReductionFailed,
  NotStabilized,
  NoRecurrenceFound,
  ValidationFailed,
  ConstantDenominator,
  MissingTable,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised by the polynomial parser; `position` is a 0-based byte offset.
class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, std::size_t position, const std::string& what)
      : Error(kind, "at position " + std::to_string(position) + ": " + what),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace subzeta
