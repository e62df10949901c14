#ifndef SELFSIM_ERROR_HPP
#define SELFSIM_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace selfsim {

enum class ErrorCode {
  DuplicateId,
  DanglingEndpoint,
  NonComposable,
  DomainMismatch,
  UnknownSymbol,
  SyntaxError,
  JunctionMismatch,
  ValidationError,
  ClosureLimitExceeded,
  Diverged,
  NotStronglyConnected,
  VertexNotInLevel,
  ShapeMismatch,
  ZeroBlockDivision,
  InvalidArgument,
  InvalidGerm,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so
// callers (the CLI in particular) can map them onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Parse failures additionally remember where they happened (1-based).
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t column, const std::string& what)
      : Error(ErrorCode::SyntaxError,
              "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace selfsim

#endif  // SELFSIM_ERROR_HPP
