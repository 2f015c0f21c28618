#pragma once

#include <stdexcept>
#include <string>

namespace hetnet {

// Malformed or inconsistent input: files, labels, weights, partitions.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DuplicateEdgeError : public DataError {
 public:
  using DataError::DataError;
};

class InvalidWeightError : public DataError {
 public:
  using DataError::DataError;
};

class EmptyLayerError : public DataError {
 public:
  using DataError::DataError;
};

class PartitionMismatchError : public DataError {
 public:
  using DataError::DataError;
};

// Failures of a numerical method on otherwise valid input.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// alpha at or beyond 1/lambda_max, where the centrality series diverges.
class DivergenceError : public NumericalError {
 public:
  DivergenceError(const std::string& what, double alpha, double bound)
      : NumericalError(what), alpha_(alpha), bound_(bound) {}

  double alpha() const noexcept { return alpha_; }
  double bound() const noexcept { return bound_; }

 private:
  double alpha_;
  double bound_;
};

class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, double residual)
      : NumericalError(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

// Rounded centrality sums to zero, so the null model is undefined.
class DegenerateNullModelError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace hetnet
