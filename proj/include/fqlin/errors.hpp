#pragma once

#include <stdexcept>
#include <string>

namespace fqlin {

// Base of every error raised by the kernel. exit_code() is the CLI status
// the error maps to.
class KernelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const { return 3; }
};

class InvalidConfig : public KernelError {
 public:
  using KernelError::KernelError;
  int exit_code() const override { return 2; }
};

class ParseError : public KernelError {
 public:
  ParseError(const std::string& what, std::size_t position, std::string expected)
      : KernelError(what + " at position " + std::to_string(position) +
                    (expected.empty() ? std::string() : " (expected " + expected + ")")),
        position_(position),
        expected_(std::move(expected)) {}

  std::size_t position() const { return position_; }
  const std::string& expected() const { return expected_; }
  int exit_code() const override { return 2; }

 private:
  std::size_t position_;
  std::string expected_;
};

class DivisionByZero : public KernelError {
 public:
  DivisionByZero() : KernelError("division by zero") {}
};

class PrecisionExhausted : public KernelError {
 public:
  using KernelError::KernelError;
};

class PerfectionDepthExceeded : public KernelError {
 public:
  using KernelError::KernelError;
};

// Exponent arithmetic left the range of 128-bit integers.
class ExponentOverflow : public KernelError {
 public:
  ExponentOverflow() : KernelError("exponent arithmetic overflow") {}
};

class NeedsFieldExtension : public KernelError {
 public:
  // required_s is the smallest extension degree over F_q known to suffice,
  // or 0 when the search bound was exhausted without finding one.
  NeedsFieldExtension(const std::string& what, int required_s)
      : KernelError(what + (required_s > 0
                                ? " (requires s = " + std::to_string(required_s) + ")"
                                : " (requires a larger residue extension)")),
        required_s_(required_s) {}

  int required_s() const { return required_s_; }
  int exit_code() const override { return 5; }

 private:
  int required_s_;
};

class OutsideConvergenceDomain : public KernelError {
 public:
  using KernelError::KernelError;
};

class NotAUnit : public KernelError {
 public:
  using KernelError::KernelError;
};

class ZeroInput : public KernelError {
 public:
  using KernelError::KernelError;
};

class ZeroDenominator : public KernelError {
 public:
  ZeroDenominator() : KernelError("fraction has a zero denominator") {}
};

class NotSolvable : public KernelError {
 public:
  using KernelError::KernelError;
};

class InvalidProblem : public KernelError {
 public:
  using KernelError::KernelError;
};

class NonConvergent : public KernelError {
 public:
  using KernelError::KernelError;
  int exit_code() const override { return 4; }
};

}  // namespace fqlin
