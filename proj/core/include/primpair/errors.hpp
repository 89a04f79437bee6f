#pragma once

#include <stdexcept>

namespace primpair {

// Input outside an operation's mathematical domain (p not prime, s not
// dividing q-1, inverse of zero, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Input is well formed but exceeds a configured table or enumeration cap.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace primpair
