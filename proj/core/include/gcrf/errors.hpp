#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gcrf {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A symmetric factorization failed: the matrix is not positive definite.
/// Solvers use this as the infeasibility signal for a trial point.
class NotPositiveDefinite : public Error {
 public:
  explicit NotPositiveDefinite(const std::string& what = "matrix is not positive definite")
      : Error(what) {}
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Data whose statistics admit no finite optimum (singular covariance,
/// non-positive-definite Schur complement, non-finite objective).
class DegenerateData : public Error {
 public:
  using Error::Error;
};

class LineSearchStalled : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace gcrf
