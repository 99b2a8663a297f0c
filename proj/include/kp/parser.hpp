#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kp/context.hpp"
#include "kp/formula.hpp"
#include "kp/term.hpp"

namespace kp {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// `assume x : F` lines followed by `TERM : FORMULA`.
struct Judgment {
  Context context;
  Term term;
  Formula formula;
};

// Precedence ~ > /\ > \/ > ->; -> is right-associative, /\ and \/ are
// left-associative.
Formula parse_formula(std::string_view src);
Term parse_term(std::string_view src);
Judgment parse_judgment(std::string_view src);
// Comma-separated formulas; empty input gives an empty list.
std::vector<Formula> parse_formula_list(std::string_view src);

}  // namespace kp
