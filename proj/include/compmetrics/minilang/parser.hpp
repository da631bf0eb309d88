#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "compmetrics/error.hpp"
#include "compmetrics/minilang/ast.hpp"

namespace compmetrics::minilang {

class SyntaxError : public Error {
 public:
  SyntaxError(Span at, std::vector<std::string> expected, std::string found);

  Span where() const noexcept { return at_; }
  /// Sorted, deduplicated token spellings acceptable at `where()`.
  const std::vector<std::string>& expected() const noexcept { return expected_; }
  const std::string& found() const noexcept { return found_; }

 private:
  Span at_;
  std::vector<std::string> expected_;
  std::string found_;
};

/// Parses MiniOO source (grammar in docs/minioo.ebnf). Throws SyntaxError.
Program parse_source(std::string_view text);

/// Canonical pretty-printed form; `parse_source(print_program(p)) == p`.
std::string print_program(const Program& program);

}  // namespace compmetrics::minilang
