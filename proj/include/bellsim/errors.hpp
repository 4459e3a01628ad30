#pragma once

#include <stdexcept>

namespace bellsim {

// Input outside an operation's documented domain.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computation on valid input produced something unusable (overflow,
// non-convergence, broken normalization).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bellsim
