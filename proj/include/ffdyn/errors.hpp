#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ffdyn {

// Root of every error this library throws. Subclasses identify the failure
// kind so callers (notably the CLI exit-code mapping) can branch on type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotPrime : public Error {
 public:
  using Error::Error;
};

class InvalidModulus : public Error {
 public:
  using Error::Error;
};

class InvalidBasis : public Error {
 public:
  using Error::Error;
};

class FieldMismatch : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// A linear system with rank(A) < rank(A|b).
class Inconsistent : public Error {
 public:
  using Error::Error;
};

// Sample data that assigns two different outputs to the same input point.
class InconsistentData : public Inconsistent {
 public:
  using Inconsistent::Inconsistent;
};

class DuplicatePoint : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

class DomainViolation : public SchemaError {
 public:
  using SchemaError::SchemaError;
};

class BadPrime : public SchemaError {
 public:
  using SchemaError::SchemaError;
};

class RangeViolation : public Error {
 public:
  using Error::Error;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

}  // namespace ffdyn
