#pragma once

#include <stdexcept>
#include <string>

namespace ivtest {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Vector or matrix dimensions do not line up.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// An index or size argument lies outside its admissible range.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// A computation would exceed a configured size cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// An internal cross-check failed. Seeing one of these means a bug.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Vertex enumeration was asked for an unbounded polyhedron.
class UnboundedError : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input (numbers, JSON documents).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace ivtest
