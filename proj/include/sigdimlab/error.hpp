#pragma once

#include <stdexcept>
#include <string>

namespace sigdimlab {

// Base of every error raised by the library. Callers that only care about
// "something went wrong in a computation" catch this one.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands whose shapes do not fit together (vector lengths, matrix blocks).
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Malformed textual or JSON input.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Input that is well formed but geometrically unusable (a point, an empty
// set, points that do not span, ...).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

// An internal consistency check failed: a certificate did not verify, a
// group action left its domain, and so on.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

// Bad user request (unknown solid name, invalid parameter).
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace sigdimlab
