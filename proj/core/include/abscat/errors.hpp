#pragma once

#include <stdexcept>
#include <string>

namespace abscat {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A parameter is mathematically valid but outside the supported range
/// (negative Robin parameter, oracle arguments past the series-practical zone).
class UnsupportedRange : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A result would exceed the representable floating point range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// An iterative procedure (series, continued fraction, quadrature) did not
/// reach its tolerance within the configured budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed; indicates a kernel defect rather than
/// a bad input.
class KernelFailure : public Error {
 public:
  using Error::Error;
};

/// The radial grid is too coarse for the requested wavenumber.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// The asymptotic fit of a radial solution has an unacceptable residual.
class FitQualityError : public Error {
 public:
  using Error::Error;
};

}  // namespace abscat
