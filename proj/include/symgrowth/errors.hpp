#pragma once

#include <stdexcept>
#include <string>

namespace symgrowth {

/// A point or parameter outside the model's coordinate domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An operation was called with arguments violating its contract.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numeric overflow or an argument outside a sampled range.
///
/// `completed()` reports how many steps finished before the guard fired
/// (for iterated Jacobians) or -1 when not applicable.
class RangeError : public std::range_error {
 public:
  explicit RangeError(const std::string& what, long completed = -1)
      : std::range_error(what), completed_(completed) {}

  long completed() const noexcept { return completed_; }

 private:
  long completed_;
};

}  // namespace symgrowth
