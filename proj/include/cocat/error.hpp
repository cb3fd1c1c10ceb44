#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace cocat {

enum class ErrorKind {
  DivisionByZero,
  FieldMismatch,
  NotPrime,
  NotInjective,
  Singular,
  ObjectSetMismatch,
  DuplicateObjects,
  ShapeMismatch,
  UnknownObject,
  NotConilpotent,
  NotCoaugmented,
  SNotSubset,
  InternalInvariantViolation,
  ImageNotInS,
  SourceTargetMismatch,
  ObjectMapsDiffer,
  NotEqualizing,
  ParseError,
};

inline const char* kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::NotInjective: return "NotInjective";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::ObjectSetMismatch: return "ObjectSetMismatch";
    case ErrorKind::DuplicateObjects: return "DuplicateObjects";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::UnknownObject: return "UnknownObject";
    case ErrorKind::NotConilpotent: return "NotConilpotent";
    case ErrorKind::NotCoaugmented: return "NotCoaugmented";
    case ErrorKind::SNotSubset: return "SNotSubset";
    case ErrorKind::InternalInvariantViolation: return "InternalInvariantViolation";
    case ErrorKind::ImageNotInS: return "ImageNotInS";
    case ErrorKind::SourceTargetMismatch: return "SourceTargetMismatch";
    case ErrorKind::ObjectMapsDiffer: return "ObjectMapsDiffer";
    case ErrorKind::NotEqualizing: return "NotEqualizing";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// All library failures. `witness` names the offending object, basis
/// element or matrix entry when there is one.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string witness = {})
      : std::runtime_error(std::string(kind_name(kind)) + ": " + message),
        kind_(kind),
        witness_(std::move(witness)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& witness() const noexcept { return witness_; }

 private:
  ErrorKind kind_;
  std::string witness_;
};

}  // namespace cocat
