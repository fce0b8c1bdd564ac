#pragma once

#include <stdexcept>
#include <string>

namespace zsk {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration or argument (bad hyperparameter, unsupported option).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent data: schema mismatch, unknown target id,
/// non-finite values, dimension mismatch between fit and predict.
class DataError : public Error {
 public:
  using Error::Error;
};

}  // namespace zsk
