#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lagrange {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class NonFiniteError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Raised by direct factorizations when a pivot (or 2x2 pivot block) vanishes
/// to working precision. `pivot()` is the elimination step that failed.
class SingularSystemError : public Error {
 public:
  SingularSystemError(const std::string& what, std::size_t pivot)
      : Error(what), pivot_(pivot) {}
  std::size_t pivot() const noexcept { return pivot_; }

 private:
  std::size_t pivot_;
};

/// Raised when a matrix required to have full row rank does not, judged by
/// sigma_min >= rank_tol * sigma_max on the rank-revealing factorization.
class RankDeficientError : public Error {
 public:
  RankDeficientError(const std::string& what, std::size_t rank,
                     std::size_t expected)
      : Error(what), rank_(rank), expected_(expected) {}
  std::size_t rank() const noexcept { return rank_; }
  std::size_t expected_rank() const noexcept { return expected_; }

 private:
  std::size_t rank_;
  std::size_t expected_;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input. `line()` is 1-based; 0 when the file itself is
/// missing or unreadable.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace lagrange
