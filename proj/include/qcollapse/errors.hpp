#pragma once

#include <stdexcept>
#include <string>

namespace qcollapse {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands have incompatible or unsupported dimensions.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A matrix failed a Hermiticity check required by the operation.
class NotHermitian : public Error {
 public:
  using Error::Error;
};

/// A matrix failed the normality predicate (unitary/Hermitian) it was declared with.
class NotNormal : public Error {
 public:
  using Error::Error;
};

/// Branch probabilities do not sum to one within tolerance.
class ProbabilityLeak : public Error {
 public:
  using Error::Error;
};

/// Every collapse branch fell below the probability floor.
class DegenerateState : public Error {
 public:
  using Error::Error;
};

/// The probe Hamiltonian does not commute with the environment coupling.
class NotQND : public Error {
 public:
  explicit NotQND(double norm)
      : Error("interaction violates the non-demolition condition: commutator max-norm " +
              std::to_string(norm)),
        commutator_norm(norm) {}

  double commutator_norm;
};

/// A scenario configuration is malformed; the message names the offending field.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace qcollapse
