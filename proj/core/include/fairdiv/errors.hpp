#ifndef FAIRDIV_ERRORS_HPP_
#define FAIRDIV_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace fairdiv {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

// Malformed instance/allocation/config text. `field` names the offending key.
class ParseError : public Error {
 public:
  ParseError(std::string field, const std::string& message)
      : Error(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// An enumeration guard was exceeded (see guard_limit()).
class ResourceError : public Error {
 public:
  using Error::Error;
};

// Wrong agent count, kind or divisibility for the requested operation.
class ConstraintError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Arithmetic domain violation (division by zero, negative values, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A value violates a type invariant (allocation not a partition, ...).
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace fairdiv

#endif  // FAIRDIV_ERRORS_HPP_
