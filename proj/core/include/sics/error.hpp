#pragma once

#include <stdexcept>
#include <string>

namespace sics {

// Caller supplied arguments that can never be valid (bad sizes, infeasible
// counts, malformed files).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Arguments are well-formed but violate a mathematical precondition of the
// requested quantity (e.g. a width bound for the zero vector).
class PreconditionViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A A^T could not be factorized: the measurement prefix is rank deficient.
class SingularEnsemble : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace sics
