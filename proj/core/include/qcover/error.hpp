#pragma once

#include <stdexcept>
#include <string>

namespace qcover {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameters outside an operation's domain, mismatched ambient spaces, or
/// malformed input files.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed one of the hard budgets (subspaces, vectors,
/// point subsets). Never silently truncated.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// A construction produced (or was handed) a structure that fails its verifier.
class VerificationFailed : public Error {
 public:
  using Error::Error;
};

}  // namespace qcover
