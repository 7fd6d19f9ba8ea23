#pragma once

#include <stdexcept>
#include <string>

namespace bending {

// Base of every error raised by the library. Each subclass corresponds to
// one failure contract of an operation, so callers (the CLI in particular)
// can map them to exit codes without string matching.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input outside the domain of a formula (threshold violated, point outside
// the model, parameter out of range).
class DomainError : public Error {
 public:
  using Error::Error;
};

class DisjointError : public Error {
 public:
  using Error::Error;
};

class CriticalPointError : public Error {
 public:
  using Error::Error;
};

class SingularityError : public Error {
 public:
  using Error::Error;
};

class InvalidLamination : public Error {
 public:
  using Error::Error;
};

class NotStackedError : public Error {
 public:
  using Error::Error;
};

class TangencyError : public Error {
 public:
  using Error::Error;
};

class NotGoodError : public Error {
 public:
  using Error::Error;
};

class RejectionBudgetExceeded : public Error {
 public:
  using Error::Error;
};

class ConfigInvalid : public Error {
 public:
  using Error::Error;
};

class QuadratureNonConvergent : public Error {
 public:
  using Error::Error;
};

}  // namespace bending
