#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace nestchase {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition was not met (dimension mismatch, bad argument).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// A request or body has no feasible point.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// An operation that requires a bounded body received an unbounded one.
class UnboundedError : public Error {
 public:
  using Error::Error;
};

/// The input is lower-dimensional where full dimension is required.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed; indicates a bug.
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// An iterative method hit its iteration cap.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, Eigen::VectorXd last_iterate, double gap)
      : Error(what), last_iterate_(std::move(last_iterate)), gap_(gap) {}

  const Eigen::VectorXd& last_iterate() const noexcept { return last_iterate_; }
  double gap() const noexcept { return gap_; }

 private:
  Eigen::VectorXd last_iterate_;
  double gap_;
};

/// Malformed input file. Line and column are 1-based; 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(what), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace nestchase
