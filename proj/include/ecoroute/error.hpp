#pragma once

#include <stdexcept>
#include <string>

namespace ecoroute {

// Base class for every error raised by the library. Callers that only care
// about "something went wrong" catch this; the CLI maps subclasses onto exit
// codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed network / parameter file. The message carries the line number
// (for syntax errors) or the JSON path of the offending field.
class ParseError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

class EmptyNetworkError : public Error {
 public:
  using Error::Error;
};

// A numeric argument outside the domain of the operation (negative energy,
// non-positive speed, alpha outside [0,1], ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

// Path is not a contiguous walk of the network.
class StructuralError : public Error {
 public:
  using Error::Error;
};

class NoRouteError : public Error {
 public:
  using Error::Error;
};

// A configured size limit (enumeration cap, model size) was exceeded.
class CapacityError : public Error {
 public:
  using Error::Error;
};

}  // namespace ecoroute
