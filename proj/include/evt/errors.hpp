#pragma once

#include <stdexcept>
#include <string>

namespace evt {

enum class ErrorCode {
  Domain,
  UnsupportedParameter,
  AbsentProfile,
  Degenerate,
  Differentiation,
  Quadrature,
  InsufficientPoints,
  SignChange,
  Index,
  Unsupported,
  Syntax,
  UnknownIdentifier,
  UnboundParameter,
  DomainViolation,
  DuplicateName,
  NonMonotone,
  Config,
  Io,
};

const char* to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above.
/// Parser-related errors additionally carry a 1-based line/column.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  Error(ErrorCode code, const std::string& message, int line, int column)
      : std::runtime_error(message), code_(code), line_(line), column_(column) {}

  ErrorCode code() const noexcept { return code_; }
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  bool has_position() const noexcept { return line_ > 0; }

 private:
  ErrorCode code_;
  int line_ = 0;
  int column_ = 0;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace evt
