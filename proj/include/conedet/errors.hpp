#pragma once

#include <stdexcept>
#include <string>

namespace conedet {

// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent input data (bad dimensions, failed invariants).
class SchemaError : public Error {
 public:
  using Error::Error;
};

// A numerical procedure could not deliver a trustworthy result.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class KernelError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class UnsupportedError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace conedet
