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

#include "sebfs/sketch.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>

namespace sebfs::sketch {

void EpochMarks::next_epoch() {
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
}

// ---------------------------------------------------------------------------
// EvictedEdges

EvictedEdges::EvictedEdges(const std::filesystem::path& path, graphio::IoMeter* meter)
    : out_(path, meter) {}

void EvictedEdges::append(NodeId parent, NodeId child, std::uint32_t rank) {
  out_.write_u32(parent);
  out_.write_u32(child);
  out_.write_u32(rank);
  ++count_;
}

std::vector<EvictedRecord> EvictedEdges::replay(const std::filesystem::path& path,
                                                graphio::IoMeter* meter) {
  graphio::ByteReader in(path, meter);
  std::vector<EvictedRecord> out;
  std::array<std::byte, 12> raw{};
  while (in.read(raw)) {
    out.push_back(EvictedRecord{static_cast<NodeId>(graphio::load_le(raw.data(), 4)),
                                static_cast<NodeId>(graphio::load_le(raw.data() + 4, 4)),
                                static_cast<std::uint32_t>(graphio::load_le(raw.data() + 8, 4))});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sketch

Sketch::Sketch(std::size_t n, std::uint64_t capacity)
    : capacity_(capacity),
      tree_head_(n, kNil),
      tree_tail_(n, kNil),
      staged_head_(n, kNil),
      staged_tail_(n, kNil) {
  if (capacity >= kNil) {
    throw BudgetError("edge capacity " + std::to_string(capacity) +
                      " exceeds the slot index range");
  }
  slots_.reserve(static_cast<std::size_t>(capacity));
}

std::uint32_t Sketch::allocate(NodeId target) {
  if (used() >= capacity_) {
    throw BudgetError("sketch is full (" + std::to_string(capacity_) + " edges)");
  }
  std::uint32_t s;
  if (free_ != kNil) {
    s = free_;
    free_ = slots_[s].next;
  } else {
    s = static_cast<std::uint32_t>(slots_.size());
    slots_.push_back(Slot{});
  }
  slots_[s] = Slot{target, kNil};
  return s;
}

void Sketch::release(std::uint32_t slot) {
  slots_[slot].next = free_;
  free_ = slot;
}

void Sketch::insert_rightmost_child(NodeId u, NodeId v, NodeAttrs& attrs) {
  if (u == v) {
    throw std::logic_error("node cannot be its own parent");
  }
  const std::uint32_t s = allocate(v);
  if (tree_tail_[u] == kNil) {
    tree_head_[u] = s;
  } else {
    slots_[tree_tail_[u]].next = s;
  }
  tree_tail_[u] = s;
  ++tree_edges_;
  attrs.P[v] = u;
  note_peak();
}

void Sketch::detach_child(NodeId v, const NodeAttrs& attrs) {
  const NodeId u = attrs.P[v];
  if (u == kRoot) {
    const auto it = std::find(roots_.begin(), roots_.end(), v);
    if (it == roots_.end()) {
      throw std::logic_error("node " + std::to_string(v) + " is not a root child");
    }
    roots_.erase(it);
    return;
  }
  std::uint32_t prev = kNil;
  for (std::uint32_t s = tree_head_[u]; s != kNil; prev = s, s = slots_[s].next) {
    if (slots_[s].target != v) {
      continue;
    }
    const std::uint32_t next = slots_[s].next;
    if (prev == kNil) {
      tree_head_[u] = next;
    } else {
      slots_[prev].next = next;
    }
    if (tree_tail_[u] == s) {
      tree_tail_[u] = prev;
    }
    release(s);
    --tree_edges_;
    return;
  }
  throw std::logic_error("node " + std::to_string(v) + " is not in its parent's child list");
}

void Sketch::stage_edge(NodeId u, NodeId v) {
  const std::uint32_t s = allocate(v);
  if (staged_tail_[u] == kNil) {
    staged_head_[u] = s;
  } else {
    slots_[staged_tail_[u]].next = s;
  }
  staged_tail_[u] = s;
  ++staged_edges_;
  note_peak();
}

std::vector<NodeId> Sketch::children(NodeId u) const {
  std::vector<NodeId> out;
  for_each_child(u, [&](NodeId v) { out.push_back(v); });
  return out;
}

std::vector<NodeId> Sketch::staged(NodeId u) const {
  std::vector<NodeId> out;
  for_each_staged(u, [&](NodeId v) { out.push_back(v); });
  return out;
}

std::vector<std::uint32_t> Sketch::child_slots(NodeId u) const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t s = tree_head_[u]; s != kNil; s = slots_[s].next) out.push_back(s);
  return out;
}

void Sketch::v_prune(NodeId u, EvictedEdges* log) {
  std::uint32_t rank = 0;
  std::uint32_t s = tree_head_[u];
  while (s != kNil) {
    const std::uint32_t next = slots_[s].next;
    if (log != nullptr) {
      log->append(u, slots_[s].target, rank);
    }
    ++rank;
    release(s);
    --tree_edges_;
    s = next;
  }
  tree_head_[u] = kNil;
  tree_tail_[u] = kNil;
}

void Sketch::release_lists(NodeId u) {
  for (std::uint32_t s = tree_head_[u]; s != kNil;) {
    const std::uint32_t next = slots_[s].next;
    release(s);
    --tree_edges_;
    s = next;
  }
  for (std::uint32_t s = staged_head_[u]; s != kNil;) {
    const std::uint32_t next = slots_[s].next;
    release(s);
    --staged_edges_;
    s = next;
  }
  tree_head_[u] = tree_tail_[u] = kNil;
  staged_head_[u] = staged_tail_[u] = kNil;
}

void Sketch::reset_pool(const VisitOrder& order, Position lo, Position hi, NodeAttrs& attrs) {
  for (Position i = lo; i < hi; ++i) {
    const NodeId u = order[i];
    tree_head_[u] = tree_tail_[u] = kNil;
    staged_head_[u] = staged_tail_[u] = kNil;
  }
  slots_.clear();
  free_ = kNil;
  tree_edges_ = 0;
  staged_edges_ = 0;
  roots_.clear();

  for (Position i = lo; i < hi; ++i) {
    const NodeId u = order[i];
    const NodeId p = attrs.P[u];
    if (p == kRoot) {
      roots_.push_back(u);
      continue;
    }
    const Position bp = attrs.B[p];
    if (bp < lo) {
      continue;
    }
    if (bp >= i) {
      throw std::logic_error("parent of node " + std::to_string(u) +
                             " is not placed before it (position " + std::to_string(bp) +
                             " >= " + std::to_string(i) + ")");
    }
    insert_rightmost_child(p, u, attrs);
  }
}

void Sketch::clear() {
  std::fill(tree_head_.begin(), tree_head_.end(), kNil);
  std::fill(tree_tail_.begin(), tree_tail_.end(), kNil);
  std::fill(staged_head_.begin(), staged_head_.end(), kNil);
  std::fill(staged_tail_.begin(), staged_tail_.end(), kNil);
  slots_.clear();
  free_ = kNil;
  tree_edges_ = 0;
  staged_edges_ = 0;
  roots_.clear();
}

MemoryBreakdown Sketch::memory() const {
  MemoryBreakdown m;
  m.pool_bytes = capacity_ * sizeof(Slot);
  m.list_bytes = 4ull * tree_head_.size() * sizeof(std::uint32_t);
  m.root_list_bytes = tree_head_.size() * sizeof(NodeId);
  return m;
}

}  // namespace sebfs::sketch
