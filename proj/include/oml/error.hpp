#pragma once

#include <stdexcept>
#include <string>

namespace oml {

// Base for every failure raised by the library. The CLI maps the concrete
// type onto an exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain (negative t, non-finite values).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Bad construction parameters or experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// The requested quantity is undefined for the given input (zero measure etc).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

// Some atom is not contained in any cube of the family.
class CoverageError : public Error {
 public:
  using Error::Error;
};

// A hypothesis failed its numerical check. `check()` names the check.
class HypothesisError : public Error {
 public:
  HypothesisError(std::string check, const std::string& detail)
      : Error(check + ": " + detail), check_(std::move(check)) {}
  const std::string& check() const noexcept { return check_; }

 private:
  std::string check_;
};

// Text input that does not parse; carries 1-based line and column.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace oml
