#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace semad {

// Base for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input is well-formed bytes but violates a domain rule (bad constraint,
// unsound net, empty log, ...). The CLI maps this to exit code 1.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Syntax error in a document. Line and column are 1-based; 0 means unknown.
class ParseError : public ValidationError {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : ValidationError(what + " (line " + std::to_string(line) + ", column " +
                        std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// File could not be opened, read or written. CLI exit code 2.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace semad
