#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "ltlpct/formula.hpp"

namespace ltlpct {

/// Syntax error; line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  /// Message without the "line:col: " prefix.
  const std::string& detail() const { return detail_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string detail_;
};

/// Grammar, tightest first: atoms, `true`, `false`, parentheses; prefix
/// `!`, `X`, `F`, `G`, `Half`, `PM`, `MFL p`, `P[cmp k%]`; infix `U`; then
/// `&`, `|`, `->`, `<->`. Every binary operator associates to the right.
Formula parse_formula(std::string_view text);

/// Inverse of parse_formula up to whitespace and redundant parentheses.
std::string print_formula(const Formula& f);

/// Splits a file body into one formula per non-blank line. Lines starting
/// with `#` are comments. Parse errors report the line within `text`.
std::vector<Formula> parse_formula_lines(std::string_view text);

}  // namespace ltlpct
