// Copyright 2026 The tetris-adapt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace tetris {

/// Operands live on registers of different sizes.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A dense realization was requested above the configured qubit cap.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Malformed text input. `line()` is 1-based, 0 when not applicable.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Stored integrals violate a declared permutational symmetry.
class SymmetryError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// Generator cannot be exponentiated exactly (terms do not commute).
class UnsupportedGenerator : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Objective or gradient went non-finite and the optimizer could not recover.
class OptimizationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tetris
