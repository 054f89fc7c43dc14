#pragma once

#include <stdexcept>
#include <string>

namespace mpfbm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in spaces of different dimension.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A parameter or argument lies outside the admissible domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure (factorization, eigen-solve) failed.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Malformed external input (JSON, CSV).
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace mpfbm
