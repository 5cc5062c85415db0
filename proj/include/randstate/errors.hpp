#pragma once

#include <stdexcept>
#include <string>

namespace rstate {

/// Invalid argument to a sampler, formula or estimator (bad dimension, shape, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input outside the domain of a functional, e.g. a negative probability.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed estimator configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative routine failed to converge, or produced a value that
/// contradicts the invariants of its input.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace rstate
