#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wrtm {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed machine or automaton text. `line()` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A machine that violates a structural rule (see validate()).
class InvalidMachine : public Error {
 public:
  using Error::Error;
};

// Operation requires a weight-reducing machine.
class NotWeightReducing : public Error {
 public:
  using Error::Error;
};

// A configured work limit (steps, cells, automaton states) was hit.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// Arithmetic result does not fit into 64 bits.
class OverflowError : public Error {
 public:
  using Error::Error;
};

}  // namespace wrtm
