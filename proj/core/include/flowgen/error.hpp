// Copyright 2026 The flowgen Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace flowgen {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition of an operation was not met (bad shape, out-of-range argument).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// User-supplied configuration failed validation.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Filesystem or stream failure.
class IoError : public Error {
 public:
  using Error::Error;
};

enum class ParseErrorKind {
  kBadMagic,
  kBadVersion,
  kTruncated,
  kShapeMismatch,
  kMalformed,
};

/// A file was readable but its content does not match the expected format.
class ParseError : public IoError {
 public:
  ParseError(ParseErrorKind kind, const std::string& what) : IoError(what), kind_(kind) {}
  ParseErrorKind kind() const noexcept { return kind_; }

 private:
  ParseErrorKind kind_;
};

/// Training or sampling produced a non-finite value.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Process exit code used by the command-line tool for a given exception.
int exit_code_for(const std::exception& e) noexcept;

// Throws ContractViolation with `message` when `condition` is false.
inline void require(bool condition, const std::string& message) {
  if (!condition) throw ContractViolation(message);
}

}  // namespace flowgen
