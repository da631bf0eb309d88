#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace compmetrics {

/// Stable error kinds. The CLI prints them as `error[<kind>]: ...`.
enum class ErrorCode {
  parse_error,
  unsupported_version,
  invalid_facts,
  merge_conflict,
  unknown_component,
  unknown_class,
  syntax_error,
  unmapped_class,
  invalid_delta,
  empty_ledger,
  ledger_corrupt,
  empty_report,
  not_partitionable,
  stale_plan,
  io_error,
  usage,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Malformed structured text. `line`/`column` are 1-based; `offset` is the
/// byte offset into the source.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column,
             std::size_t offset)
      : Error(ErrorCode::parse_error, message),
        line_(line),
        column_(column),
        offset_(offset) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::size_t offset_;
};

}  // namespace compmetrics
