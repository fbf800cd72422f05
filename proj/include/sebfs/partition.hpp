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
#include <queue>
#include <vector>

#include "sebfs/graph_file.hpp"
#include "sebfs/io.hpp"
#include "sebfs/types.hpp"

namespace sebfs::graphio {

struct DegreeTable {
  std::vector<std::uint32_t> indeg;
  std::vector<std::uint32_t> outdeg;

  std::size_t size() const { return indeg.size(); }
};

/// One sequential pass over the graph file.
DegreeTable compute_degrees(const std::filesystem::path& graph, IoMeter* meter);

/// Number of edges that fit the in-memory budget, floor((1 + K) * n).
std::uint64_t edge_capacity(std::uint64_t n, double k);

struct PartitionSet {
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::uint64_t chunk = 0;  // edges per partition, except possibly the last
  std::vector<std::filesystem::path> files;
  std::vector<std::uint64_t> sizes;

  std::size_t count() const { return files.size(); }
};

std::filesystem::path partition_path(const std::filesystem::path& dir, std::size_t index);

/// Splits the graph into ceil(m / floor((1+K)n)) consecutive chunks and
/// writes each one sorted by source (stable) as part-<index>.edges inside
/// `dir`. When `degrees` is non-null it is filled during the same pass.
PartitionSet scan_g(const std::filesystem::path& graph, double k, std::uint64_t budget,
                    const std::filesystem::path& dir, IoMeter* meter,
                    DegreeTable* degrees = nullptr);

struct SourceGroup {
  NodeId source = 0;
  std::vector<NodeId> targets;   // out-neighbors with positive out-degree
  std::vector<Edge> sink_edges;  // edges into nodes of zero out-degree
};

/// k-way merge over the partitions. Sources come out in ascending order; a
/// source's edges keep partition-index order, then in-partition order. Only
/// sources with at least one edge are emitted.
class MergeReader {
 public:
  MergeReader(const PartitionSet& parts, const DegreeTable& degrees, IoMeter* meter);

  bool next(SourceGroup& out);

 private:
  struct Head {
    NodeId src;
    std::uint32_t part;
    friend bool operator>(const Head& a, const Head& b) {
      return a.src != b.src ? a.src > b.src : a.part > b.part;
    }
  };

  void advance(std::uint32_t part);

  const DegreeTable& degrees_;
  std::vector<EdgeReader> readers_;
  std::vector<Edge> current_;
  std::priority_queue<Head, std::vector<Head>, std::greater<>> heap_;
  bool has_last_ = false;
  NodeId last_ = 0;
};

}  // namespace sebfs::graphio
