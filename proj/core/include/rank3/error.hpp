#pragma once

#include <stdexcept>
#include <string>

namespace rank3 {

// Malformed or out-of-range user input (bad prime, bad dimension, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A certificate that should hold by construction did not. Always a bug or a
// falsified mathematical assumption, never a user error.
class CertificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Instance exceeds the configured size guard.
class OutOfScale : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A randomized search or enumeration ran out of its budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rank3
