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
#include <span>
#include <string>
#include <vector>

#include "sebfs/bfs_tree.hpp"
#include "sebfs/io.hpp"
#include "sebfs/types.hpp"

namespace sebfs::oracle {

/// Whole graph in memory. Out-neighbors keep raw-file order.
struct InMemGraph {
  std::size_t n = 0;
  std::vector<std::vector<NodeId>> out;

  static InMemGraph from_edges(std::size_t n, std::span<const Edge> edges);
  static InMemGraph load(const std::filesystem::path& path, graphio::IoMeter* meter = nullptr);

  std::uint64_t edge_count() const;
};

/// Queue BFS that marks on enqueue and restarts from the first unmarked node
/// of `restart_order` whenever the queue runs dry.
BfsTree reference_bfs(const InMemGraph& g, std::span<const NodeId> restart_order);
BfsTree reference_bfs(const InMemGraph& g);  // restarts in id order

struct Validation {
  std::vector<std::string> structural;
  std::vector<Edge> violations;  // first `max_reported` offending edges
  std::uint64_t violation_count = 0;
  std::uint64_t edges_checked = 0;

  bool ok() const { return structural.empty() && violation_count == 0; }
};

/// Shape checks only: sizes, B a permutation of 1..n, parents in range and
/// placed before their children, and B equal to the restart breadth-first
/// order of the tree it describes.
std::vector<std::string> check_structure(const BfsTree& tree, std::size_t n);

/// Shape checks plus one sequential pass applying is_vbfs_edge to every edge.
Validation validate_bfs_tree(const std::filesystem::path& graph, const BfsTree& tree,
                             graphio::IoMeter* meter = nullptr, std::size_t max_reported = 1000);
Validation validate_bfs_tree(const InMemGraph& g, const BfsTree& tree,
                             std::size_t max_reported = 1000);

inline constexpr std::size_t kMaxBruteForceNodes = 12;

/// Longest simple path length in edges, by exhaustive search.
std::uint32_t brute_llsp(const InMemGraph& g);

/// Same quantity by dynamic programming over node subsets (n <= 20).
std::uint32_t llsp_subset_dp(const InMemGraph& g);

}  // namespace sebfs::oracle
