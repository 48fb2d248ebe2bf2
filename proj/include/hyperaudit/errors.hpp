#pragma once

#include <stdexcept>
#include <string>

namespace hyperaudit {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A primitive was applied outside its real domain (ln of a non-positive
/// number, division by zero, ...). Carries the primitive and its argument;
/// the field evaluator attaches the innermost offending subexpression.
class DomainError : public Error {
 public:
  DomainError(std::string primitive, double argument, std::string subexpression = {})
      : Error(format(primitive, argument, subexpression)),
        primitive_(std::move(primitive)),
        argument_(argument),
        subexpression_(std::move(subexpression)) {}

  const std::string& primitive() const noexcept { return primitive_; }
  double argument() const noexcept { return argument_; }
  const std::string& subexpression() const noexcept { return subexpression_; }

  DomainError with_subexpression(std::string text) const {
    return DomainError(primitive_, argument_, std::move(text));
  }

 private:
  static std::string format(const std::string& primitive, double argument,
                            const std::string& subexpression) {
    std::string msg = "domain error: " + primitive + " at argument " + std::to_string(argument);
    if (!subexpression.empty()) msg += " in '" + subexpression + "'";
    return msg;
  }

  std::string primitive_;
  double argument_;
  std::string subexpression_;
};

class ParseError : public Error {
 public:
  enum class Kind { Syntax, UnknownIdentifier, VariableOutOfRange, NonIntegerExponent };

  ParseError(Kind kind, std::size_t position, const std::string& message)
      : Error("parse error at position " + std::to_string(position) + ": " + message),
        kind_(kind),
        position_(position) {}

  Kind kind() const noexcept { return kind_; }
  /// Zero-based character offset into the parsed text.
  std::size_t position() const noexcept { return position_; }

 private:
  Kind kind_;
  std::size_t position_;
};

class DegenerateMetricError : public Error {
 public:
  using Error::Error;
};

/// A coordinate violates one of the chart's domain constraints.
class DomainConstraintError : public Error {
 public:
  using Error::Error;
};

/// Rejection sampling exhausted its attempt cap.
class SamplingError : public Error {
 public:
  using Error::Error;
};

class DegeneratePlaneError : public Error {
 public:
  using Error::Error;
};

/// Manifest schema violation; `path()` addresses the offending field.
class SchemaError : public Error {
 public:
  SchemaError(std::string path, const std::string& message)
      : Error("schema error at '" + path + "': " + message), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace hyperaudit
