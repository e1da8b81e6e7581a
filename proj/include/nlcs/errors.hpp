#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nlcs {

struct NlcsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input text. Line and column are 1-based.
struct ParseError : NlcsError {
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : NlcsError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                  what),
        line(line),
        column(column) {}
  std::size_t line;
  std::size_t column;
};

/// Well-formed input using a construct outside the supported fragment.
struct UnsupportedFeature : NlcsError {
  explicit UnsupportedFeature(const std::string& construct)
      : NlcsError("unsupported feature: " + construct), construct(construct) {}
  std::string construct;
};

/// Virtual substitution cannot eliminate a variable of degree above two.
struct DegreeTooHigh : NlcsError {
  DegreeTooHigh(std::size_t var, int degree)
      : NlcsError("degree " + std::to_string(degree) + " in variable #" + std::to_string(var) +
                  " exceeds the virtual substitution limit"),
        var(var),
        degree(degree) {}
  std::size_t var;
  int degree;
};

}  // namespace nlcs
