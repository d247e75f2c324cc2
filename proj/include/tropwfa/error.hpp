#pragma once

#include <stdexcept>
#include <string>

namespace tropwfa {

/// Malformed input: unknown letters or states, bad files, inconsistent runs.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An operation was called on an automaton that does not meet its contract
/// (e.g. an ambiguous automaton where an unambiguous one is required).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Finite weight arithmetic left the 64-bit range.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// A construction-level guarantee did not hold. Raised when a lifted run is
/// missing from a constructed automaton, which falsifies the input's
/// assumed gap bound, or when a witness cannot be transported.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tropwfa
