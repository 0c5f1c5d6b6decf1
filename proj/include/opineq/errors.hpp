#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace opineq {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands of incompatible shape.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Input outside the domain of an operation (negative spectrum for a root,
// spectrum outside a cube, non-abelian tuple, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// An iterative method failed to reach its tolerance.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// A random instance generator exhausted its retry budget.
class GenerationError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace opineq
