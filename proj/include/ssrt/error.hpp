#pragma once

#include <stdexcept>
#include <string>

namespace ssrt {

// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on an argument was violated (bad flag value, mismatched
// dimensions, non-binary input where binary is required, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// The image carries no mass to analyse.
class EmptyObject : public InvalidArgument {
 public:
  EmptyObject() : InvalidArgument("empty object") {}
  explicit EmptyObject(const std::string& what) : InvalidArgument(what) {}
};

// Reading or writing a file failed.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace ssrt
