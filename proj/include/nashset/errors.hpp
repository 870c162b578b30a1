// Copyright 2026 The nashset Authors
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

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nashset {

/// Malformed input or a violated precondition (CLI exit code 2).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An enumeration would exceed its configured cap (CLI exit code 3).
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(const std::string& what, std::uint64_t required, std::uint64_t cap)
      : std::runtime_error(what + ": requires " + std::to_string(required) +
                           " candidates, cap is " + std::to_string(cap)),
        required_(required),
        cap_(cap) {}

  std::uint64_t required() const { return required_; }
  std::uint64_t cap() const { return cap_; }

 private:
  std::uint64_t required_;
  std::uint64_t cap_;
};

/// Non-finite or otherwise unusable numbers from the PDE solver (exit code 4).
class NumericInstability : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nashset
