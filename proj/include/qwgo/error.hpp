#pragma once

#include <stdexcept>
#include <string>

namespace qwgo {

// Argument outside the mathematical domain of an operation (negative Bessel
// argument, m > N, index out of range, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A computation produced something unusable: an all-zero state, an overflowing
// damping factor, a non-finite objective value.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad configuration or flags. Maps to exit code 1 in the CLI.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace qwgo
