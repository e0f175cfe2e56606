#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ncdiff {

// Base of every domain error raised by the kernel. The CLI maps these to
// exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A jet operation needs more series coefficients than are valid.
class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

// Operands come from different realizations, dimensions or t-modes.
class RealizationMismatch : public Error {
 public:
  using Error::Error;
};

// The operation is not defined for this realization (e.g. D0 on a plain jet).
class UnsupportedRealization : public Error {
 public:
  using Error::Error;
};

class SingularConstantTerm : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class KernelPremiseViolated : public Error {
 public:
  using Error::Error;
};

// L_s L - L~ L_s still contains powers of D.
class DefectNotScalar : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset, int line = 0)
      : Error(format(message, offset, line)), message_(message), offset_(offset), line_(line) {}

  const std::string& message() const noexcept { return message_; }
  std::size_t offset() const noexcept { return offset_; }
  int line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& message, std::size_t offset, int line) {
    std::string out;
    if (line > 0) out += "line " + std::to_string(line) + ", ";
    out += "offset " + std::to_string(offset) + ": " + message;
    return out;
  }

  std::string message_;
  std::size_t offset_;
  int line_;
};

}  // namespace ncdiff
