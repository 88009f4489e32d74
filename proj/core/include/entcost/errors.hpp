#pragma once

#include <stdexcept>
#include <string>

namespace entcost {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (state descriptors, files, numbers).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Arguments outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A size or enumeration guard would be exceeded.
class GuardError : public Error {
 public:
  using Error::Error;
};

}  // namespace entcost
