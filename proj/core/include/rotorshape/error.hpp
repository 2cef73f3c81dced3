#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rotorshape {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input: out-of-range parameter, malformed record, unknown unit.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Numerical failure during a computation that received valid input.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class NonFiniteField : public NumericalError {
 public:
  NonFiniteField(double t, double value);
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// The requested Fourier target cannot be realized by a normalized state.
/// `max_scale()` is the largest factor the coefficients may be multiplied by
/// for the target to become feasible.
class InfeasibleAmplitude : public NumericalError {
 public:
  explicit InfeasibleAmplitude(double max_scale);
  double max_scale() const noexcept { return max_scale_; }

 private:
  double max_scale_;
};

class ZeroCoefficient : public NumericalError {
 public:
  ZeroCoefficient(std::size_t index, double magnitude);
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

}  // namespace rotorshape
