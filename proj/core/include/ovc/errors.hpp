#pragma once

#include <stdexcept>
#include <string>

namespace ovc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Array shapes or index ranges do not line up.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An input value is outside its documented range.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A caller broke a documented precondition (e.g. non-disjoint masks).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// A serialized document does not match the schema; message names the field.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// File could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace ovc
