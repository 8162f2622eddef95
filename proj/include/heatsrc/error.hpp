#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace heatsrc {

/// Base class of every error raised by the library. The CLI maps these to exit code 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain an operation is defined on.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A requested cosine mode is not resolvable on the sampling grid.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// Composite Simpson needs an even number of cells.
class QuadratureConfigError : public Error {
 public:
  using Error::Error;
};

/// Regularization or model parameter out of range (e.g. M <= delta).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Two frequency functions live on different grids.
class GridMismatchError : public Error {
 public:
  using Error::Error;
};

/// Truncated Gaussian tail exceeds the allowed bound.
class TailBoundError : public Error {
 public:
  using Error::Error;
};

/// The inversion kernel vanishes at a frequency or mode inside the band.
class SingularKernelError : public Error {
 public:
  SingularKernelError(const std::string& what, double where)
      : Error(what), where_(where) {}

  /// Frequency xi (line case) or mode number m (interval case).
  double where() const noexcept { return where_; }

 private:
  double where_;
};

/// Discrepancy rule not met before the iteration cap.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, std::vector<double> trace)
      : Error(what), trace_(std::move(trace)) {}

  const std::vector<double>& trace() const noexcept { return trace_; }

 private:
  std::vector<double> trace_;
};

}  // namespace heatsrc
