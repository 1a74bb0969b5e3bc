#pragma once

#include <stdexcept>
#include <string>

namespace uqsim {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands disagree on Hilbert-space dimension.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A precondition or algebraic invariant does not hold (non-Hermitian input,
// broken Pauli algebra, gate precondition, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Integration or decomposition went outside its numerical envelope.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Malformed network spec document.
class ParseError : public Error {
 public:
  using Error::Error;
};

// A solver did not reach its tolerance.
class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace uqsim
