#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace meshtape {

// Malformed input that cannot be parsed (OBJ syntax, skeleton JSON, ...).
// Command line front ends map this to exit code 1.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& message)
      : std::runtime_error(message) {}

  // line is 1-based; it is prefixed to the message so callers that only
  // print what() still see it.
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}

  // 0 when no line information applies.
  std::size_t line() const { return line_; }

 private:
  std::size_t line_ = 0;
};

// Well-formed input on which the requested geometric operation is
// impossible (missed ray, empty region, out-of-order landmarks, ...).
// Command line front ends map this to exit code 2.
class GeometryError : public std::runtime_error {
 public:
  explicit GeometryError(const std::string& message)
      : std::runtime_error(message) {}
};

}  // namespace meshtape
