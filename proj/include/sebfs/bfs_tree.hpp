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

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "sebfs/io.hpp"
#include "sebfs/types.hpp"

namespace sebfs {

/// Output of every algorithm: breadth-first positions (a permutation of
/// 1..n) and parents, where kRoot marks a child of the dummy root.
struct BfsTree {
  std::vector<Position> B;
  std::vector<NodeId> P;

  std::size_t size() const { return B.size(); }
  friend bool operator==(const BfsTree&, const BfsTree&) = default;
};

/// True when (u, v) shows the tree is not breadth-first: v is not a child of
/// u, u precedes v, and u precedes v's parent. A root parent never precedes.
inline bool is_vbfs_edge(NodeId u, NodeId v, std::span<const Position> B,
                         std::span<const NodeId> P) {
  const NodeId pv = P[v];
  if (pv == u || B[u] >= B[v]) {
    return false;
  }
  return pv == kRoot || B[u] < B[pv];
}

// Tree file: 32-byte header ("SEBFSTRE", version, id width 4, n, reserved)
// followed by B[0..n) and P[0..n) as little-endian u32, kRoot = 0xFFFFFFFF.
inline constexpr std::array<char, 8> kTreeMagic = {'S', 'E', 'B', 'F', 'S', 'T', 'R', 'E'};

void write_tree_file(const std::filesystem::path& path, const BfsTree& tree,
                     graphio::IoMeter* meter = nullptr);
BfsTree read_tree_file(const std::filesystem::path& path, graphio::IoMeter* meter = nullptr);

}  // namespace sebfs
