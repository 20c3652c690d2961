#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sumset {

enum class ErrorKind {
  DomainError,
  EqualPolynomials,
  NotCaseII,
  BadPair,
  BadParams,
  WindowTooSmall,
  InadmissibleA0,
  NoAdmissibleA0,
  EmptyPattern,
  NoConfiguration,
  EmptySet,
  WindowOverrun,
  DivisibilityError,
  NonPositiveElement,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a machine-readable kind so the
/// CLI and the Python bindings can report it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failure with the byte offset into the offending input.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& message)
      : Error(ErrorKind::ParseError,
              message + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace sumset
