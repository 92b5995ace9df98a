#pragma once

#include <stdexcept>
#include <string>

namespace bmspec {

enum class ErrorKind {
  InvalidDimension,
  InvalidArgument,
  Index,
  NumericRange,
  SingularSystem,
  DegeneratePattern,
  DegenerateInstance,
  NegativeSquare,
  Unsupported,
  Precondition,
  IncompleteBasis,
  Parse,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// True for the error kinds the CLI maps to exit code 3.
bool is_numeric_degeneracy(ErrorKind kind);

}  // namespace bmspec
