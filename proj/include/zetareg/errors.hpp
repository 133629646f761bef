#pragma once

#include <stdexcept>
#include <string>

namespace zetareg {

// Every failure raised by the library derives from Error so callers (the CLI in
// particular) can map it to an exit code without catching std::exception.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : Error { using Error::Error; };
struct PoleError : Error { using Error::Error; };
struct RangeError : Error { using Error::Error; };
struct ResourceError : Error { using Error::Error; };
struct PreconditionError : Error { using Error::Error; };
struct NoRootError : Error { using Error::Error; };
struct OverflowError : Error { using Error::Error; };
struct DivisionError : Error { using Error::Error; };

// Raised when a discontinuous quantity (floor, Gauss symbol) cannot be decided
// at the working precision, or two precision levels disagree.
struct InsufficientPrecision : Error { using Error::Error; };

}  // namespace zetareg
