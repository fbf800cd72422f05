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
#include <filesystem>

#include "sebfs/graph_file.hpp"
#include "sebfs/io.hpp"

namespace sebfs::graphio {

/// Largest edge count generate_er accepts. Duplicate detection keeps every
/// packed pair in memory (8 bytes per edge).
inline constexpr std::uint64_t kMaxGeneratedEdges = std::uint64_t{1} << 28;

/// Uniform random simple digraph with exactly m edges and no self-loops.
/// A pure function of (n, m, seed).
GraphHeader generate_er(const std::filesystem::path& out, std::uint64_t n, std::uint64_t m,
                        std::uint64_t seed, IoMeter* meter = nullptr);

/// Keeps each edge independently with probability p, in one pass.
GraphHeader subsample(const std::filesystem::path& in, const std::filesystem::path& out, double p,
                      std::uint64_t seed, IoMeter* meter = nullptr);

}  // namespace sebfs::graphio
