#pragma once

#include <stdexcept>
#include <string>

namespace shilov {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Two elements from different algebras were combined.
struct AlgebraMismatch : Error {
  using Error::Error;
};

/// Inversion (real or complex) of an element whose determinant is zero
/// within tolerance.
struct SingularElement : Error {
  using Error::Error;
};

/// A cone operation (sqrt, log-like powers) was applied outside the
/// open symmetric cone.
struct NotInCone : Error {
  using Error::Error;
};

/// A point required to lie on the Shilov boundary does not.
struct NotBoundary : Error {
  using Error::Error;
};

/// A pair of boundary points required to be transverse was not.
struct NonTransverse : Error {
  using Error::Error;
};

/// A quadruple fed to the cross ratio was not extremal (some sub-triple
/// has non-maximal Maslov index).
struct NotExtremal : Error {
  using Error::Error;
};

/// A partial conformal action hit its singular set and the deterministic
/// phase-perturbation retry could not move the configuration off it.
struct SingularOrbit : Error {
  using Error::Error;
};

/// A rejection sampler exhausted its attempt budget.
struct BudgetExhausted : Error {
  using Error::Error;
};

/// Malformed user input (descriptor strings, JSON payloads, CLI values).
struct ParseError : Error {
  using Error::Error;
};

}  // namespace shilov
