#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pprei {

/// Base class for every error raised by the library.  Messages are one line
/// and suitable for printing as a CLI diagnostic.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text.  `line()` is 1-based; 0 means "not tied to a line".
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line)
      : Error(line == 0 ? message : "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace pprei
