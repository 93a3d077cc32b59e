#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace hoprank {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A caller supplied an argument outside the documented domain.
class ValidationError : public Error {
public:
  explicit ValidationError(const std::string& what) : Error(what) {}
};

/// A config or table file could not be parsed. Carries the 1-based
/// position of the offending token.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

/// An iterative method hit its iteration cap before meeting tolerance.
/// The last iterate is preserved so callers can inspect how close it got.
class ConvergenceError : public Error {
public:
  ConvergenceError(const std::string& what, std::vector<double> last_iterate)
      : Error(what), last_iterate_(std::move(last_iterate)) {}

  const std::vector<double>& last_iterate() const { return last_iterate_; }

private:
  std::vector<double> last_iterate_;
};

/// The birth-death chain has no usable stationary distribution
/// (for example every state weight underflowed to zero).
class DegenerateChainError : public Error {
public:
  explicit DegenerateChainError(const std::string& what) : Error(what) {}
};

/// An expression did not have the shape an operation requires
/// (for example subtracting a non-linear timestamp).
class UnsupportedFormError : public Error {
public:
  explicit UnsupportedFormError(const std::string& what) : Error(what) {}
};

/// A statistic was requested from a run that produced no qualifying samples.
class InsufficientDataError : public Error {
public:
  explicit InsufficientDataError(const std::string& what) : Error(what) {}
};

/// The input is structurally valid but too small or too uniform for the
/// requested computation (for example ranking a single alternative).
class DegenerateInputError : public Error {
public:
  explicit DegenerateInputError(const std::string& what) : Error(what) {}
};

/// A file could not be read or written.
class IoError : public Error {
public:
  explicit IoError(const std::string& what) : Error(what) {}
};

} // namespace hoprank
