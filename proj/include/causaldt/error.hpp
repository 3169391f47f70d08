#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace causaldt {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller passed arguments that violate an operation's preconditions
/// (unknown variable, decision variable where a chance variable is required,
/// misaligned problems, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A parsed model failed validation. `path` locates the offending element.
class ValidationError : public InputError {
 public:
  ValidationError(const std::string& path, const std::string& message)
      : InputError("invalid model at " + path + ": " + message), path_(path) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// An enumeration would exceed its caller-supplied size budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// A model is internally inconsistent, e.g. evaluation reached a function
/// row flagged unreachable.
class ModelError : public Error {
 public:
  using Error::Error;
};

/// Malformed document text. Carries a 1-based line and column.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error("syntax error at line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Well-formed text that does not match the document schema.
class SchemaError : public Error {
 public:
  SchemaError(const std::string& path, const std::string& message)
      : Error("schema violation at " + path + ": " + message), path_(path) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace causaldt
