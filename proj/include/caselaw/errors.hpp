#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace caselaw {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed formula or document text. Carries a 1-based position when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(message + " at line " + std::to_string(line) + ", column " +
              std::to_string(column)),
        line_(line),
        column_(column) {}
  explicit ParseError(const std::string& message) : Error(message) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_ = 0;
  std::size_t column_ = 0;
};

/// A structural invariant of a case or database does not hold.
class ModelError : public Error {
 public:
  using Error::Error;
};

class UnknownCourtError : public ModelError {
 public:
  using ModelError::ModelError;
};

/// A reasoning task that requires a consistent database was given one that is not.
class InconsistentDatabaseError : public Error {
 public:
  using Error::Error;
};

/// Input uses an identifier from a namespace reserved for internal encodings.
class ReservedNameError : public Error {
 public:
  using Error::Error;
};

class SizeLimitError : public Error {
 public:
  using Error::Error;
};

}  // namespace caselaw
