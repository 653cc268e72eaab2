// Copyright 2026 The Unicert Authors
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace unicert {

/// Operands disagree on qubit count (or matrix/vector size).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An argument is outside its documented domain.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The request is valid but exceeds a size cap of a dense backend.
class CapabilityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A certification configuration violates a precondition (e.g. epsilon range).
class ConfigurationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed input file or record.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The target graph is outside the certifiable family.
class NotCertifiableError : public std::invalid_argument {
 public:
  NotCertifiableError(std::size_t vertex, const std::string& reason)
      : std::invalid_argument("vertex " + std::to_string(vertex + 1) + ": " +
                              reason),
        vertex_(vertex) {}

  /// Zero-based index of the vertex that breaks the condition.
  std::size_t vertex() const noexcept { return vertex_; }

 private:
  std::size_t vertex_;
};

}  // namespace unicert
