#include "bmspec/error.hpp"

namespace bmspec {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidDimension: return "invalid-dimension";
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::Index: return "index";
    case ErrorKind::NumericRange: return "numeric-range";
    case ErrorKind::SingularSystem: return "singular-system";
    case ErrorKind::DegeneratePattern: return "degenerate-pattern";
    case ErrorKind::DegenerateInstance: return "degenerate-instance";
    case ErrorKind::NegativeSquare: return "negative-square";
    case ErrorKind::Unsupported: return "unsupported-size";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::IncompleteBasis: return "incomplete-basis";
    case ErrorKind::Parse: return "parse";
  }
  return "error";
}

bool is_numeric_degeneracy(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NumericRange:
    case ErrorKind::SingularSystem:
    case ErrorKind::DegeneratePattern:
    case ErrorKind::DegenerateInstance:
    case ErrorKind::NegativeSquare:
      return true;
    default:
      return false;
  }
}

}  // namespace bmspec
