#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace irsvm {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes or vector lengths disagree.
class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

/// A scalar argument lies outside its admissible domain (L <= 0, p not in (0,1), ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A weight vector contains a negative entry.
class NegativeWeight : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The SVD could not be computed (non-finite input or solver failure).
class DecompositionFailure : public Error {
 public:
  using Error::Error;
};

/// The admissible smoothing interval for the second method is empty or not representable.
class EmptyEpsilonSet : public Error {
 public:
  using Error::Error;
};

/// The solver produced a NaN or infinite objective value.
class NonFiniteObjective : public Error {
 public:
  using Error::Error;
};

/// A file could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent input file.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  /// 1-based line number, or 0 when the error is not tied to a line.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

inline void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeMismatch(std::string(what) + ": shape " + std::to_string(a.rows()) + "x" +
                        std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                        std::to_string(b.cols()));
  }
}

}  // namespace irsvm
