#pragma once

#include <stdexcept>
#include <string>

namespace cvbell {

/// Raised when a series or tail sum does not meet its tolerance within the
/// allotted number of terms.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised for arguments outside an operation's domain.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by the oracle when a state cannot be materialized with a tail mass
/// below the admission threshold.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, int cutoff, double tail_mass)
      : std::runtime_error(what), cutoff_(cutoff), tail_mass_(tail_mass) {}

  int cutoff() const noexcept { return cutoff_; }
  double tail_mass() const noexcept { return tail_mass_; }

 private:
  int cutoff_;
  double tail_mass_;
};

}  // namespace cvbell
