// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hosq {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// An iterative solver exhausted its iteration budget.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Expression text could not be parsed; carries the byte offset of the failure.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t offset)
        : Error(message + " (at byte offset " + std::to_string(offset) + ")"),
          offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Expression evaluation hit an undefined operation (division by zero,
/// sqrt of a negative number, ...). The message names the operation.
class EvalError : public Error {
public:
    using Error::Error;
};

/// Malformed mesh file; carries the 1-based line number.
class FormatError : public Error {
public:
    FormatError(const std::string& message, std::size_t line)
        : Error(message + " (line " + std::to_string(line) + ")"), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A mesh file declares a face with a vertex count other than three.
class NonTriangleFaceError : public FormatError {
public:
    using FormatError::FormatError;
};

/// Filesystem-level failure.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace hosq
