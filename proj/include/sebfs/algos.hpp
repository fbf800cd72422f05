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
#include <optional>
#include <span>
#include <vector>

#include "sebfs/bfs_tree.hpp"
#include "sebfs/graph_file.hpp"
#include "sebfs/io.hpp"
#include "sebfs/partition.hpp"
#include "sebfs/sketch.hpp"
#include "sebfs/types.hpp"

namespace sebfs::algos {

struct RunOptions {
  double k = 1.0;
  double gamma = 0.08;
  std::uint64_t watchdog = 0;          // pass limit; 0 means n
  double time_limit_s = 0.0;           // 0 disables the limit
  std::filesystem::path scratch_base;  // empty: $SEBFS_SCRATCH or the temp dir
  bool audit = false;                  // EP only: replay the evicted log and cross-check P
};

struct RunMetrics {
  double wall_seconds = 0.0;
  std::uint64_t bytes_read = 0;
  std::uint64_t bytes_written = 0;
  std::uint64_t capacity = 0;
  std::uint64_t peak_in_memory_edges = 0;
  std::uint64_t outer_iterations = 0;      // full scans of the edge list after setup
  std::uint64_t restructuring_passes = 0;  // scans that changed the tree
  std::uint64_t imp_invocations = 0;
  sketch::MemoryBreakdown memory;

  // EP only.
  std::uint64_t partitions = 0;
  std::uint64_t active_nodes = 0;
  std::uint64_t scan_list_edges = 0;  // initial scan list
  std::uint64_t source_edges = 0;     // edges leaving in-degree-0 nodes
  std::uint64_t sink_edges = 0;       // edges entering out-degree-0 nodes
  std::uint64_t evicted_edges = 0;
  std::uint64_t scan_list_rebuilds = 0;
  std::vector<Position> finalized_history;  // finalized bound after each iteration
};

struct RunResult {
  BfsTree tree;
  RunMetrics metrics;
};

/// Baseline: one tree, restructured edge by edge, orders recomputed in full.
RunResult ee_bfs(const std::filesystem::path& graph, const RunOptions& opt = {});

/// Batched: K*n edges at a time are merged into the tree by im_bfs.
RunResult eb_bfs(const std::filesystem::path& graph, const RunOptions& opt = {});

/// Partitioned, pruning variant with a shrinking scan list.
RunResult ep_bfs(const std::filesystem::path& graph, const RunOptions& opt = {});

/// One in-memory merge of a staged batch into a tree. Tree children of a
/// node are visited before its staged targets; children of the root are
/// restart candidates in breadth-first order. Standalone reference used to
/// cross-check the sketch-based path.
BfsTree im_bfs(const BfsTree& tree, std::span<const Edge> batch);

/// Star tree over n nodes in id order.
BfsTree star_tree(std::size_t n);

struct ReduceResult {
  Position end = 0;  // one past the last assigned position
  bool parent_changed = false;
};

/// BFS over the sketch (tree plus staged edges) that reuses `order` as its
/// queue. Positions up to finalized are untouched; order(finalized, frontier] seeds the queue.
/// The pool is rebuilt from the new order afterwards.
ReduceResult ep_reduce(sketch::Sketch& sk, sketch::VisitOrder& order, sketch::NodeAttrs& attrs,
                       sketch::EpochMarks& marks, Position finalized, Position frontier);

/// Scans order[hi] down to order[lo + 1] for the first node with a child in
/// memory and returns the position of its rightmost child; hi otherwise.
Position find(Position lo, Position hi, const sketch::Sketch& sk, const sketch::VisitOrder& order,
              const sketch::NodeAttrs& attrs);

/// Appends e to `next` when B[src] > frontier and B[dst] > grand_frontier.
bool enlarge(graphio::AdjListWriter& next, Edge e, Position frontier, Position grand_frontier,
             const sketch::NodeAttrs& attrs);

/// Position bounds carried between main-loop iterations. Everything at or
/// below `finalized` is settled; `frontier` and `grand_frontier` bound the
/// children and grandchildren of that prefix.
struct Thresholds {
  std::vector<Position> flush_bounds;  // lowest violating source position per flush
  Position finalized = 0;
  Position frontier = 0;
  Position grand_frontier = 0;
  std::uint64_t rebuild_base = 1;  // frontier at the last scan-list rebuild
  std::uint32_t rebuilds = 0;
};

/// frontier - rebuild_base > n * gamma * (m / n)^rebuilds
bool scan_list_rebuild_due(Position frontier, std::uint64_t rebuild_base, std::uint32_t rebuilds,
                           std::uint64_t n, std::uint64_t m, double gamma);

/// The on-disk scan list and its optional replacement under construction.
class ScanLists {
 public:
  ScanLists(std::filesystem::path dir, std::uint64_t n, graphio::IoMeter* meter);

  const std::filesystem::path& active() const { return active_; }
  std::uint64_t active_edges() const { return active_edges_; }
  graphio::AdjListWriter* next() { return next_ ? &*next_ : nullptr; }

  /// Starts the initial list.
  graphio::AdjListWriter& begin_initial();
  void seal_initial();
  void open_next();
  /// Replaces the active list with the collected one.
  void seal_next();

 private:
  std::filesystem::path fresh_path();

  std::filesystem::path dir_;
  std::uint64_t n_;
  graphio::IoMeter* meter_;
  std::filesystem::path active_;
  std::uint64_t active_edges_ = 0;
  std::optional<graphio::AdjListWriter> next_;
  std::filesystem::path next_path_;
  std::uint32_t generation_ = 0;
};

/// End-of-iteration bookkeeping for the scan list: seals an open replacement,
/// then opens a new one when the rebuild threshold is crossed. Returns true
/// when a new list was opened.
bool er_prune(Thresholds& th, ScanLists& lists, std::uint64_t n, std::uint64_t m, double gamma);

enum class NodeClass : std::uint8_t { kSink, kSource, kActive };

/// Final assembly: sinks first in id order, then the active nodes in their
/// order, then sources in id order. Pruned nodes hang off the root.
BfsTree reset_tree(std::span<const NodeClass> cls, const sketch::NodeAttrs& attrs,
                   std::uint64_t active_nodes);

}  // namespace sebfs::algos
