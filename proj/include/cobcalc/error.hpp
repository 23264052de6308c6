#pragma once

#include <stdexcept>
#include <string>

namespace cobcalc {

// Caller handed us something outside an operation's precondition
// (context mismatch, nonzero constant term, singular Weyl matrix, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A construction-time self check failed. This is a bug, never user error.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Group closure or enumeration ran past its size cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Inverse-limit requested on a tower whose images have not stabilized
// inside the supplied window.
class NotStabilized : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cobcalc
