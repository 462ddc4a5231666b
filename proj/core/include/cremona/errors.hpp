#pragma once

#include <stdexcept>
#include <string>

namespace cremona {

/// Base of every error raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DivisionByZero : Error {
  DivisionByZero() : Error("division by zero") {}
};

struct InvalidOrder : Error {
  using Error::Error;
};

struct ArityMismatch : Error {
  using Error::Error;
};

struct PreconditionViolation : Error {
  using Error::Error;
};

/// Birational group action evaluated at one of its indeterminacy points.
struct UndefinedImage : Error {
  using Error::Error;
};

struct InconsistentContraction : Error {
  using Error::Error;
};

struct GateViolation : Error {
  using Error::Error;
};

struct NonProgress : Error {
  using Error::Error;
};

struct IncompleteCertification : Error {
  using Error::Error;
};

}  // namespace cremona
