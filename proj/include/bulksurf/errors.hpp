#pragma once

#include <stdexcept>
#include <string>

namespace bulksurf {

// Argument outside the mathematical domain of an operation (negative
// concentrations, exponents p <= 1, ...).
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Inconsistent call: dimension mismatch, empty input, unsupported combination.
class usage_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A scenario violates the preconditions of a property check.
class precondition_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace bulksurf
