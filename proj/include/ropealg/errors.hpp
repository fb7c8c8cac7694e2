#ifndef ROPEALG_ERRORS_HPP
#define ROPEALG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ropealg {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Shape disagreement between operands (non-square input, length mismatch, ...).
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Argument outside the operation's domain (non-finite entries, odd d, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Operation requires state the object does not carry (e.g. missing block plan).
class StateError : public Error {
 public:
  using Error::Error;
};

// Request would exceed a hard resource cap (e.g. reversibility grid size).
class ResourceError : public Error {
 public:
  using Error::Error;
};

// Malformed or schema-violating JSON input.
class ParseError : public Error {
 public:
  using Error::Error;
};

// A structural invariant failed a quantitative check; carries the residual.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

// Input is not explainable by the model it was checked against
// (e.g. a rotation matrix not generated by the given set).
class InconsistencyError : public Error {
 public:
  InconsistencyError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

}  // namespace ropealg

#endif  // ROPEALG_ERRORS_HPP
