#pragma once

#include <stdexcept>
#include <string>

namespace irma {

// Base class for all library errors. The CLI maps the three categories
// below onto stable exit codes (I/O = 3, data validation = 4, numeric = 5).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// --- I/O ---

class IoError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t row, std::size_t col)
      : Error(what + " (row " + std::to_string(row) + ", column " +
              std::to_string(col) + ")"),
        row_(row),
        col_(col) {}
  std::size_t row() const { return row_; }
  std::size_t col() const { return col_; }

 private:
  std::size_t row_;
  std::size_t col_;
};

// --- data validation ---

class ValidationError : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NotSymmetric : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NonUnitDirection : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class EmptyClass : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ZeroVariance : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class EmptyTestClass : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// --- numerical failures ---

class NumericError : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public NumericError {
 public:
  using NumericError::NumericError;
};

class DegenerateDistance : public NumericError {
 public:
  using NumericError::NumericError;
};

class AllRelevanceRemoved : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace irma
