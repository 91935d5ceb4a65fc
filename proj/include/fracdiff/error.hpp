#pragma once

#include <stdexcept>
#include <string>

namespace fracdiff {

/// Argument outside the mathematical domain of a function (x <= 0 for K_nu, alpha <= 0 for E_alpha, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Gamma function evaluated at (or within 1e-14 of) a nonpositive integer.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A parameter set violates a structural or physical constraint.
/// The message names the violated constraint.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative or quadrature procedure failed to reach its tolerance.
class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fracdiff
