#pragma once

#include <stdexcept>
#include <string>

namespace toeplitz_spectra {

/// Bad input: violated preconditions, malformed parameters.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// Inputs in the regime where the B matrix cannot be generated automatically
/// (beta_sigma > s and n <= (r-1)*sigma).
class RestrictionError : public ValidationError {
 public:
  explicit RestrictionError(const std::string& what) : ValidationError(what) {}
};

/// A numerical procedure failed (QR non-convergence, inexact conversion, ...).
class ComputationError : public std::runtime_error {
 public:
  explicit ComputationError(const std::string& what) : std::runtime_error(what) {}
};

class ConvergenceError : public ComputationError {
 public:
  ConvergenceError(const std::string& what, std::size_t index)
      : ComputationError(what), index_(index) {}
  /// Row index of the subdiagonal entry that failed to deflate.
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

}  // namespace toeplitz_spectra
