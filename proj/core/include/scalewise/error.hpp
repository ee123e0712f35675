#pragma once

#include <stdexcept>
#include <string>

namespace scalewise {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A quantity names a scale that no binding declares, or a binding is inconsistent.
class BindingError : public Error {
 public:
  using Error::Error;
};

/// An operation is undefined for its input (empty sample, non-positive value
/// under a geometric mean or a logarithm, zero denominator).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Missing or inconsistent configuration (tolerance entries, table shape).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A value lies outside the coverage of a lookup table.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Unit tags disagree between an input and the table or dataset it meets.
class UnitError : public Error {
 public:
  using Error::Error;
};

class TieError : public Error {
 public:
  using Error::Error;
};

/// Zero variance where a correlation or regression needs spread.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// A structured document violates its schema. `path()` locates the field,
/// e.g. `statements[2].lhs.scale`.
class SchemaError : public Error {
 public:
  SchemaError(std::string path, const std::string& message);

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace scalewise
