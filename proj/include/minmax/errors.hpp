#pragma once

#include <stdexcept>
#include <string>

namespace minmax {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: dimension mismatches, infeasible arguments, bad config.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Non-finite values, iteration caps, non-convergence.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// The requested operation is not defined for this problem or set.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// A constructed object violates a structural requirement (e.g. PSD blocks).
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace minmax
