#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qcd {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input. line() is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A construction exceeded a configured size cap.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// Operands live over different alphabets.
class AlphabetMismatch : public Error {
 public:
  AlphabetMismatch() : Error("alphabet mismatch") {}
};

}  // namespace qcd
