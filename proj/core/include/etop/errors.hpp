#pragma once

#include <stdexcept>
#include <string>

namespace etop {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shape or dimension disagreement between inputs.
struct DimensionError : Error {
  using Error::Error;
};

// Invalid parameter or malformed configuration value.
struct ConfigError : Error {
  using Error::Error;
};

// An iterative procedure exhausted its budget.
struct ConvergenceError : Error {
  ConvergenceError(const std::string& msg, double residual, int converged_count = 0)
      : Error(msg), residual(residual), converged_count(converged_count) {}
  double residual;
  int converged_count;
};

// Numerical degeneracy (singular system, non-finite intermediate, underflow).
struct NumericsError : Error {
  using Error::Error;
};

// File ingestion failure; `line` counts from 1 for text input, `byte` is the
// offset of the offending location for binary input (-1 when not applicable).
struct ParseError : Error {
  ParseError(const std::string& msg, long line = -1, long long byte = -1)
      : Error(msg), line(line), byte(byte) {}
  long line;
  long long byte;
};

}  // namespace etop
