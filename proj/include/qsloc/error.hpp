// Copyright 2026 The qsloc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file error.hpp
 * Exception hierarchy shared by every qsloc module.
 *
 * Callers that need to map failures onto process exit codes (the CLI) only
 * have to distinguish ValidationError, IoError and InvariantError; the more
 * specific types exist so tests can assert on the exact failure.
 */
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qsloc {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Bad arguments or inconsistent inputs.
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// Requested statevector exceeds the configured qubit cap.
class CapacityError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

/// An RSS vector has no usable reading after flooring.
class NoSignalError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

/// A fingerprint index received zero shots, so its conditional probability
/// is undefined.
class IndexNeverObservedError : public Error {
  public:
    explicit IndexNeverObservedError(std::size_t index)
        : Error("index " + std::to_string(index) + " never observed"),
          index_(index) {}

    [[nodiscard]] std::size_t index() const noexcept { return index_; }

  private:
    std::size_t index_;
};

class IoError : public Error {
  public:
    using Error::Error;
};

/// Malformed file content. Line and column are 1-based; 0 means unknown.
class ParseError : public IoError {
  public:
    ParseError(const std::string &what, std::size_t line, std::size_t column)
        : IoError(what + " (line " + std::to_string(line) + ", column " +
                  std::to_string(column) + ")"),
          line_(line), column_(column) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] std::size_t column() const noexcept { return column_; }

  private:
    std::size_t line_;
    std::size_t column_;
};

/// Internal consistency check failed. Indicates a bug, not bad input.
class InvariantError : public Error {
  public:
    using Error::Error;
};

namespace detail {

inline void require(bool condition, const std::string &message) {
    if (!condition) {
        throw ValidationError(message);
    }
}

} // namespace detail
} // namespace qsloc
