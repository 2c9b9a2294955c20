#pragma once

#include <stdexcept>
#include <string>

namespace coast {

/// Input rejected before any numerics run (bad lengths, empty graphs, ...).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed file contents; carries the 1-based line number.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, long line)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

  long line() const noexcept { return line_; }

 private:
  long line_;
};

/// Non-convergence, unbounded objective or a degenerate solution.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured size guard was exceeded (all-pairs computations).
class LimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A file could not be opened or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace coast
