#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace psdb {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: wrong dimensions, non-Hermitian data, invalid parameters.
class InputError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public InputError {
 public:
  using InputError::InputError;
};

/// A block matrix (or parent matrix) failed its positivity certificate.
class ValidationError : public InputError {
 public:
  ValidationError(const std::string& what, double lambda_min)
      : InputError(what), lambda_min_(lambda_min) {}
  double lambda_min() const noexcept { return lambda_min_; }

 private:
  double lambda_min_;
};

/// Input outside the mathematical domain of an operation (e.g. sqrt of an
/// indefinite matrix).
class DomainError : public Error {
 public:
  using Error::Error;
};

class SingularityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// An iterative kernel did not converge.
class NumericalFailure : public Error {
 public:
  NumericalFailure(const std::string& what, std::string digest)
      : Error(what + " [digest " + digest + "]"), digest_(std::move(digest)) {}
  const std::string& digest() const noexcept { return digest_; }

 private:
  std::string digest_;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double last_gap)
      : Error(what), last_gap_(last_gap) {}
  double last_gap() const noexcept { return last_gap_; }

 private:
  double last_gap_;
};

/// A rejection sampler fell below its minimum acceptance rate.
class SamplingError : public Error {
 public:
  using Error::Error;
};

}  // namespace psdb
