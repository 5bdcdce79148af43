#pragma once

#include <stdexcept>
#include <string>

namespace llbar {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class DegenerateFrame : public Error {
 public:
  using Error::Error;
};

class DegeneratePlane : public Error {
 public:
  using Error::Error;
};

class ZeroVector : public Error {
 public:
  using Error::Error;
};

class InvalidQuantumNumbers : public Error {
 public:
  using Error::Error;
};

/// A proposal exceeded the accept-reject envelope. The envelope is stale;
/// never clip.
class EnvelopeViolation : public Error {
 public:
  using Error::Error;
};

class EmptyInput : public Error {
 public:
  using Error::Error;
};

class DegenerateFit : public Error {
 public:
  using Error::Error;
};

/// Malformed text input. `line()` is 1-based; 0 when not line-oriented.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace llbar
