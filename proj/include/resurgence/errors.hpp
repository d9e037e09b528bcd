#pragma once

#include <stdexcept>
#include <string>

namespace resurgence {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exponent vectors, points or weights of different lengths were combined.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// The input lies outside the mathematical domain of an operation
/// (zero ideal where a nonzero one is required, unit ideal for Rees valuations, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The operation is well defined but not supported at this scale or for this input class.
class CapabilityError : public Error {
 public:
  using Error::Error;
};

/// An index outside the range a family can produce.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// A membership view was used where explicit generators are required.
class RepresentationError : public Error {
 public:
  using Error::Error;
};

/// Exponent arithmetic left the representable range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration input.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace resurgence
