#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sdd {

// Caller supplied something outside an operation's precondition.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed text input. line() is 1-based; 0 when no line applies.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A manager invariant was broken; indicates a bug, not bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A manager deadline expired mid-operation. The manager should be discarded.
class TimeoutError : public std::runtime_error {
 public:
  TimeoutError() : std::runtime_error("operation exceeded its time budget") {}
};

}  // namespace sdd
