#pragma once

#include <stdexcept>
#include <string>

namespace sld {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input data is malformed or inconsistent (wrong dimension, bad file, ...).
class DataError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure cannot produce a valid result.
class NumericError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public DataError {
 public:
  DimensionMismatch(std::size_t expected, std::size_t found)
      : DataError("dimension mismatch: expected " + std::to_string(expected) +
                  ", found " + std::to_string(found)),
        expected_(expected),
        found_(found) {}

  std::size_t expected() const noexcept { return expected_; }
  std::size_t found() const noexcept { return found_; }

 private:
  std::size_t expected_;
  std::size_t found_;
};

class NonFiniteInput : public DataError {
 public:
  using DataError::DataError;
};

class TooFewPoints : public DataError {
 public:
  using DataError::DataError;
};

class InvalidModel : public DataError {
 public:
  using DataError::DataError;
};

/// Unknown schema version, missing key or wrong value type in a JSON document.
class SchemaError : public DataError {
 public:
  using DataError::DataError;
};

class ZeroVariance : public NumericError {
 public:
  explicit ZeroVariance(std::size_t dimension)
      : NumericError("zero variance in dimension " + std::to_string(dimension) +
                     "; supply an explicit bandwidth"),
        dimension_(dimension) {}

  std::size_t dimension() const noexcept { return dimension_; }

 private:
  std::size_t dimension_;
};

/// Covariance matrix is not symmetric positive definite.
class FactorizationError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace sld
