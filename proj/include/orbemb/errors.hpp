#pragma once

#include <stdexcept>
#include <string>

namespace orbemb {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

/// An input violates a documented precondition (not in L, not a conjugator,
/// wrong symmetry, ...).
class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

/// A value has no representative in the Gaussian rationals (e.g. an
/// irrational square root); callers may retry in approximate arithmetic.
class NotExactlyRepresentable : public Error {
 public:
  using Error::Error;
};

/// An a-posteriori residual check failed.
class VerificationFailure : public Error {
 public:
  using Error::Error;
};

/// A witness failed its group-membership check on valid inputs.  On correct
/// inputs this cannot happen unless the orbit-injectivity argument is wrong.
class TheoremViolation : public Error {
 public:
  using Error::Error;
};

/// Malformed JSON document or schema violation.
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace orbemb
