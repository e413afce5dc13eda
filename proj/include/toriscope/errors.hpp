#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace toriscope {

/// Base class for recoverable failures reported by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke an operation's precondition (wrong sizes, wrong counts, ...).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The convex hull of the input is not full-dimensional.
class DegeneratePolytope : public Error {
 public:
  using Error::Error;
};

/// A configured cap (rays, cones, candidates, lattice points) would be exceeded.
class LimitsExceeded : public Error {
 public:
  using Error::Error;
};

/// Malformed text input; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace toriscope
