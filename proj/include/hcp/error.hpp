// Copyright 2026 The hcplab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace hcp {

// Out-of-range model parameter (alpha outside [0, 0.09], probability outside
// [0, 1], ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// q_li > q_hi: the model would encode a negative impact-citation correlation.
class CorrelationSignError : public DomainError {
 public:
  using DomainError::DomainError;
};

// The unbiasedness system has no solution because q_hi == q_li.
class SingularSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A quantity is mathematically undefined for the given input (empty
// portfolio proportion, finite threshold with q_li == 0, ...).
class UndefinedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The exact oracle was asked for a problem beyond its dense-array size cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed input file. line() is 1-based; 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line == 0 ? what
                                     : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace hcp
