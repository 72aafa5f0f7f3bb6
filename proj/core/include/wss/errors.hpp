#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wss {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input data (bad field count, bad timestamp, bad URL, ...).
// line_no() is 1-based, or 0 when the error is not tied to a line.
class ParseError : public Error {
public:
  explicit ParseError(const std::string& what, std::size_t line_no = 0)
      : Error(line_no ? "line " + std::to_string(line_no) + ": " + what : what),
        line_no_(line_no) {}

  std::size_t line_no() const { return line_no_; }

private:
  std::size_t line_no_;
};

// Caller passed a parameter or sample outside an operation's domain.
class ArgumentError : public Error {
public:
  using Error::Error;
};

// Not enough data to produce a meaningful result (too few samples,
// too few occupied bins, no qualifying users, ...).
class InsufficientDataError : public Error {
public:
  using Error::Error;
};

// Sample has no usable variation (e.g. all values equal the power-law cutoff).
class DegenerateSampleError : public Error {
public:
  using Error::Error;
};

}  // namespace wss
