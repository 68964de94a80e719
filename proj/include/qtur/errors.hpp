#pragma once

#include <stdexcept>
#include <string>

namespace qtur {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter lies outside its validated domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Integrator step violates the stability or resolution rule.
class StepSizeError : public Error {
 public:
  using Error::Error;
};

/// The generator does not have a unique stationary state.
class DegenerateNullSpaceError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A ratio with the mean current in the denominator was requested at zero current.
class ZeroCurrentError : public Error {
 public:
  using Error::Error;
};

}  // namespace qtur
