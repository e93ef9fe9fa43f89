#pragma once

#include <stdexcept>
#include <string>

namespace hyperdyn {

/// Base class for every domain error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameters : public Error {
 public:
  using Error::Error;
};

/// A single weight (or a reciprocal request) fails the positivity floor.
class NonInvertibleWeight : public Error {
 public:
  using Error::Error;
};

/// A weight sequence lacks its invertibility certificate.
class NonInvertibleWeights : public Error {
 public:
  using Error::Error;
};

class NotInAlgebra : public Error {
 public:
  using Error::Error;
};

class NotInDenseSet : public Error {
 public:
  using Error::Error;
};

class SetsNotSeparated : public Error {
 public:
  using Error::Error;
};

class ZeroInput : public Error {
 public:
  using Error::Error;
};

class EmptyRegion : public Error {
 public:
  using Error::Error;
};

}  // namespace hyperdyn
