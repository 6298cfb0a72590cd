#ifndef M0N_ERRORS_HPP
#define M0N_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace m0n {

/// Raised when an input violates an operation's precondition
/// (point out of range, wrong degree, n too small, ...).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (cycle strings, words, catalog files, JSON).
class ParseError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A configured size cap (group order, search budget) was exceeded.
class CapExceeded : public DomainError {
 public:
  using DomainError::DomainError;
};

/// An internal consistency check failed. Signals a bug, never bad input.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void ensure(bool cond, const std::string& what) {
  if (!cond) throw InvariantViolation(what);
}

}  // namespace m0n

#endif  // M0N_ERRORS_HPP
