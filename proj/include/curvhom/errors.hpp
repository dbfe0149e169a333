#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace curvhom {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression text. `position()` is the 0-based character offset.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& message)
      : Error("parse error at offset " + std::to_string(position) + ": " + message),
        position_(position),
        message_(message) {}

  std::size_t position() const noexcept { return position_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t position_;
  std::string message_;
};

/// A function was evaluated outside its domain (log of a nonpositive value,
/// division by zero, ...). `subexpression()` names the offending node when known.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what, std::string subexpression = {})
      : Error(subexpression.empty() ? what : what + " in '" + subexpression + "'"),
        reason_(what),
        subexpression_(std::move(subexpression)) {}

  const std::string& reason() const noexcept { return reason_; }
  const std::string& subexpression() const noexcept { return subexpression_; }

 private:
  std::string reason_;
  std::string subexpression_;
};

/// Singular metric or frame, or a tensor operation on incompatible shapes.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// A family function references a coordinate it may not depend on.
class FamilyError : public Error {
 public:
  using Error::Error;
};

/// A model space is not in the structured form an operation requires.
class ModelError : public Error {
 public:
  using Error::Error;
};

/// A nonvanishing hypothesis (Delta, h'', h''' ...) fails at the queried point.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

}  // namespace curvhom
