#pragma once

#include <stdexcept>
#include <string>

namespace bohr {

/// Argument outside the mathematical domain of an operation (n = 0, zero polynomial, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// An integer index left the 64-bit range. Never wrapped silently.
class OverflowError : public std::overflow_error {
public:
  using std::overflow_error::overflow_error;
};

/// A request that exceeds a configured budget (node count, prime table capacity).
class ResourceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The Gram matrix of a Szego problem is not positive definite.
class DegenerateWeightError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace bohr
