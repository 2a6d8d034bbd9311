#pragma once

#include <stdexcept>
#include <string>

namespace ptgs {

/// Arguments violate the documented precondition of an operation.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A constructed object failed its own certification. Always a bug or a
/// counterexample to a proven statement, never a user error.
class InconsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Exact coefficient arithmetic left the 64-bit range.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// A search or labeling budget ran out before the answer was known.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ptgs
