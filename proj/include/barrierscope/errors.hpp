#pragma once

#include <stdexcept>
#include <string>

namespace barrierscope {

/// Query outside an operation's mathematical domain (e.g. x outside [0, L]).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Potential DSL or config text that cannot be turned into a valid object.
/// Line and column are 1-based; column 0 means "whole line".
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line, int column);

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string detail_;
  int line_;
  int column_;
};

/// Base for failures of the numerics themselves, as opposed to bad input.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Integration produced a non-finite or runaway state.
class DivergenceError : public NumericalError {
 public:
  DivergenceError(const std::string& message, double position);
  double position() const noexcept { return position_; }

 private:
  double position_;
};

/// Root/eigenvalue search bracket without a sign change.
class BracketError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Incident energy does not give a propagating wave in Region I.
class InvalidIncidence : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace barrierscope
