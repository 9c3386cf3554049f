#pragma once

#include <stdexcept>
#include <string>

namespace twist {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero in cyclotomic field") {}
};

/// Modulus outside the supported class (odd, square-free, positive).
class UnsupportedModulus : public Error {
 public:
  using Error::Error;
};

/// A violated hypothesis on weights, indices or characters.
class SpecError : public Error {
 public:
  using Error::Error;
};

/// Numeric parameters outside the range a bound was proved for.
class RangeError : public Error {
 public:
  using Error::Error;
};

}  // namespace twist
