// SPDX-License-Identifier: Apache-2.0

#ifndef VQPT_ERRORS_HPP
#define VQPT_ERRORS_HPP

#include <stdexcept>

namespace vqpt {

/// Base class for all recoverable errors raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Operand dimensions are inconsistent (matrix shapes, mode counts, ...).
struct ShapeError : Error {
  using Error::Error;
};

/// A value lies outside its mathematical domain (non-unitary matrix,
/// non-normalized state, NaN entries, out-of-range index, ...).
struct DomainError : Error {
  using Error::Error;
};

/// A parameter vector does not match the arity a circuit expects.
struct ArityError : Error {
  using Error::Error;
};

/// The measured signal vanished after noisefloor subtraction.
struct DegenerateSignalError : DomainError {
  using DomainError::DomainError;
};

/// Invalid configuration: malformed file, unknown key, out-of-range value.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace vqpt

#endif  // VQPT_ERRORS_HPP
