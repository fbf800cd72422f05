// Copyright 2026 The sebfs Authors
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

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace sebfs {

using NodeId = std::uint32_t;
// Breadth-first position, 1-based. 0 plays the role of "minus infinity" for
// thresholds.
using Position = std::uint32_t;

inline constexpr NodeId kRoot = std::numeric_limits<NodeId>::max();
inline constexpr Position kInfinity = std::numeric_limits<Position>::max();
// Largest node count the in-memory structures accept. Setup-time sentinel
// positions run up to 2n, which must stay below kInfinity.
inline constexpr std::uint64_t kMaxNodes = (std::uint64_t{1} << 31) - 2;

struct Edge {
  NodeId src = 0;
  NodeId dst = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Failure while moving bytes to or from storage.
class StorageError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent file contents.
class FormatError : public Error {
 public:
  using Error::Error;
};

// The in-memory sketch would exceed its edge budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

// An outer loop exceeded its configured pass limit.
class WatchdogError : public Error {
 public:
  using Error::Error;
};

class TimeLimitError : public Error {
 public:
  using Error::Error;
};

}  // namespace sebfs
