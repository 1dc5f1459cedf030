#pragma once

#include <stdexcept>
#include <string>

namespace polar {

/// Base class for domain errors: inputs that violate an operation's contract.
///
/// Internal consistency failures (two independent computations disagreeing)
/// are reported as std::logic_error instead, since they indicate a bug.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation's precondition does not hold for the given inputs.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Conditioning or updating on an event of zero probability.
class NullEventError : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed its configured size cap.
class CapExceededError : public Error {
 public:
  using Error::Error;
};

}  // namespace polar
