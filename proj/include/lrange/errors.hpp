#pragma once

#include <stdexcept>
#include <string>

namespace lrange {

/// Shapes or parameters that violate an operation's preconditions.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A value failed its construction invariant (Hermitian, unitary, finite...).
class InvariantError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative routine stopped without meeting its accuracy target.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// The constructive inclusion pipeline could not certify its target.
class WitnessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input document; the message names the offending field.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace lrange
