#pragma once

#include <stdexcept>
#include <string>

namespace hoch {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad parameters, schema violations, shape mismatches.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A structure failed one of its (co)algebra axioms or d∘d = 0.
class AxiomFailure : public Error {
 public:
  using Error::Error;
};

// Requested degrees lie outside the data a complex actually carries.
class InsufficientData : public Error {
 public:
  using Error::Error;
};

// A duality statement was requested for an object outside its hypothesis.
class HypothesisFailure : public Error {
 public:
  using Error::Error;
};

// Certification was required but cannot be reached at the given truncation.
class CertificationUnattainable : public Error {
 public:
  using Error::Error;
};

// Exact integer arithmetic left the int64 range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

}  // namespace hoch
