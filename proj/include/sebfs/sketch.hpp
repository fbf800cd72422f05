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
#include <vector>

#include "sebfs/io.hpp"
#include "sebfs/types.hpp"

namespace sebfs::sketch {

/// The two per-node attributes: breadth-first position B and parent P.
struct NodeAttrs {
  std::vector<Position> B;
  std::vector<NodeId> P;

  NodeAttrs() = default;
  explicit NodeAttrs(std::size_t n) : B(n, 0), P(n, kRoot) {}

  std::size_t size() const { return B.size(); }
};

/// Node ids by breadth-first position; valid indices are 1..n.
class VisitOrder {
 public:
  VisitOrder() = default;
  explicit VisitOrder(std::size_t n) : order_(n + 1, kRoot) {}

  NodeId& operator[](Position i) { return order_[i]; }
  NodeId operator[](Position i) const { return order_[i]; }
  std::size_t size() const { return order_.empty() ? 0 : order_.size() - 1; }

 private:
  std::vector<NodeId> order_;
};

/// Per-node visit marks that are cleared in O(1) by bumping the epoch.
class EpochMarks {
 public:
  EpochMarks() = default;
  explicit EpochMarks(std::size_t n) : stamp_(n, 0) {}

  void next_epoch();
  bool marked(NodeId v) const { return stamp_[v] == epoch_; }
  void mark(NodeId v) { stamp_[v] = epoch_; }
  std::size_t size() const { return stamp_.size(); }

 private:
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 1;
};

struct EvictedRecord {
  NodeId parent;
  NodeId child;
  std::uint32_t rank;

  friend bool operator==(const EvictedRecord&, const EvictedRecord&) = default;
};

/// Append-only disk log of tree edges removed from memory. Each record is
/// three little-endian u32 words.
class EvictedEdges {
 public:
  EvictedEdges(const std::filesystem::path& path, graphio::IoMeter* meter);

  void append(NodeId parent, NodeId child, std::uint32_t rank);
  std::uint64_t size() const { return count_; }
  const std::filesystem::path& path() const { return out_.path(); }
  void close() { out_.close(); }

  static std::vector<EvictedRecord> replay(const std::filesystem::path& path,
                                           graphio::IoMeter* meter);

 private:
  graphio::ByteWriter out_;
  std::uint64_t count_ = 0;
};

struct MemoryBreakdown {
  std::uint64_t attrs_bytes = 0;  // B and P
  std::uint64_t order_bytes = 0;
  std::uint64_t pool_bytes = 0;  // edge slots, two words each
  std::uint64_t list_bytes = 0;  // head/tail words per node
  std::uint64_t marks_bytes = 0;
  std::uint64_t root_list_bytes = 0;
  std::uint64_t degree_bytes = 0;  // setup only, released before the main loop

  std::uint64_t total() const {
    return attrs_bytes + order_bytes + pool_bytes + list_bytes + marks_bytes + root_list_bytes;
  }
};

/// Bounded in-memory sketch: the partial tree's child lists and the staged
/// edges share one pool of `capacity` slots. Children of the dummy root are
/// kept in a separate ordered list and do not use pool slots.
class Sketch {
 public:
  static constexpr std::uint32_t kNil = 0xFFFFFFFFu;

  Sketch() = default;
  Sketch(std::size_t n, std::uint64_t capacity);

  std::size_t node_count() const { return tree_head_.size(); }
  std::uint64_t capacity() const { return capacity_; }
  std::uint64_t tree_edges() const { return tree_edges_; }
  std::uint64_t staged_edges() const { return staged_edges_; }
  std::uint64_t used() const { return tree_edges_ + staged_edges_; }
  std::uint64_t peak_used() const { return peak_used_; }
  bool full() const { return used() >= capacity_; }

  /// Appends v to u's child list and sets P[v] = u.
  void insert_rightmost_child(NodeId u, NodeId v, NodeAttrs& attrs);
  /// Removes v from its parent's child list (or from the root list).
  void detach_child(NodeId v, const NodeAttrs& attrs);
  void stage_edge(NodeId u, NodeId v);

  /// kRoot when u has no child in memory.
  NodeId rightmost_child(NodeId u) const {
    const std::uint32_t s = tree_tail_[u];
    return s == kNil ? kRoot : slots_[s].target;
  }
  bool is_leaf(NodeId u) const { return tree_head_[u] == kNil; }

  template <class F>
  void for_each_child(NodeId u, F&& f) const {
    for (std::uint32_t s = tree_head_[u]; s != kNil; s = slots_[s].next) f(slots_[s].target);
  }
  template <class F>
  void for_each_staged(NodeId u, F&& f) const {
    for (std::uint32_t s = staged_head_[u]; s != kNil; s = slots_[s].next) f(slots_[s].target);
  }
  std::vector<NodeId> children(NodeId u) const;
  std::vector<NodeId> staged(NodeId u) const;
  /// Pool slot indices of u's child list, in order.
  std::vector<std::uint32_t> child_slots(NodeId u) const;

  /// Moves u's child edges to `log` with their sibling ranks. Attributes of
  /// the children are left untouched.
  void v_prune(NodeId u, EvictedEdges* log);

  /// Drops u's child list and staged list without logging them.
  void release_lists(NodeId u);

  void add_root_child(NodeId v) { roots_.push_back(v); }
  const std::vector<NodeId>& root_children() const { return roots_; }

  /// Empties the pool and rebuilds the tree from order[lo, hi): each node goes
  /// to the end of its parent's child list, or of the root list when its
  /// parent is kRoot. A parent positioned before `lo` has been pruned; the
  /// edge is then left on disk. Every node that owns a list must lie in
  /// order[lo, hi).
  void reset_pool(const VisitOrder& order, Position lo, Position hi, NodeAttrs& attrs);

  /// Drops every edge and root child.
  void clear();

  MemoryBreakdown memory() const;

 private:
  struct Slot {
    NodeId target;
    std::uint32_t next;
  };

  std::uint32_t allocate(NodeId target);
  void release(std::uint32_t slot);
  void note_peak() {
    if (used() > peak_used_) peak_used_ = used();
  }

  std::uint64_t capacity_ = 0;
  std::vector<Slot> slots_;
  std::uint32_t free_ = kNil;
  std::vector<std::uint32_t> tree_head_;
  std::vector<std::uint32_t> tree_tail_;
  std::vector<std::uint32_t> staged_head_;
  std::vector<std::uint32_t> staged_tail_;
  std::vector<NodeId> roots_;
  std::uint64_t tree_edges_ = 0;
  std::uint64_t staged_edges_ = 0;
  std::uint64_t peak_used_ = 0;
};

}  // namespace sebfs::sketch
