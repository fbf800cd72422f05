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

#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>
#include <map>

#include "sebfs/sketch.hpp"
#include "test_util.hpp"

namespace sebfs::sketch {
namespace {

using sebfs::testing::TempDir;

TEST(Sketch, InsertIntoLeafAndAppend) {
  Sketch s(6, 10);
  NodeAttrs a(6);
  EXPECT_TRUE(s.is_leaf(0));
  s.insert_rightmost_child(0, 1, a);
  EXPECT_EQ(s.children(0), (std::vector<NodeId>{1}));
  s.insert_rightmost_child(0, 2, a);
  s.insert_rightmost_child(0, 3, a);
  EXPECT_EQ(s.children(0), (std::vector<NodeId>{1, 2, 3}));
  EXPECT_EQ(a.P[3], 0u);
  EXPECT_EQ(s.tree_edges(), 3u);
}

TEST(Sketch, RightmostChild) {
  Sketch s(5, 10);
  NodeAttrs a(5);
  EXPECT_EQ(s.rightmost_child(0), kRoot);
  for (NodeId v : {1, 2, 3}) s.insert_rightmost_child(0, v, a);
  EXPECT_EQ(s.rightmost_child(0), 3u);
  s.v_prune(0, nullptr);
  EXPECT_EQ(s.rightmost_child(0), kRoot);
}

TEST(Sketch, InsertTimeIsLinear) {
  auto time_inserts = [](std::size_t count) {
    double best = 1e30;
    for (int rep = 0; rep < 5; ++rep) {
      Sketch s(count + 1, count);
      NodeAttrs a(count + 1);
      std::mt19937_64 rng(rep);
      const auto t0 = std::chrono::steady_clock::now();
      for (NodeId v = 1; v <= count; ++v) {
        s.insert_rightmost_child(static_cast<NodeId>(uniform_below(rng, v)), v, a);
      }
      best = std::min(best,
                      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
  };
  const double small = time_inserts(100000);
  const double large = time_inserts(400000);
  // Four times the inserts; quadratic behaviour would give 16x.
  EXPECT_LT(large / small, 8.0) << small << " s vs " << large << " s";
}

TEST(Sketch, StagedEdgesKeepArrivalOrder) {
  Sketch s(4, 10);
  s.stage_edge(1, 3);
  s.stage_edge(1, 2);
  EXPECT_EQ(s.staged(1), (std::vector<NodeId>{3, 2}));
  EXPECT_EQ(s.staged_edges(), 2u);
}

TEST(Sketch, InterleavedSourcesMatchListOfLists) {
  const std::size_t n = 30;
  Sketch s(n, 500);
  std::map<NodeId, std::vector<NodeId>> oracle;
  std::mt19937_64 rng(4);
  for (int i = 0; i < 500; ++i) {
    const auto u = static_cast<NodeId>(uniform_below(rng, n));
    const auto v = static_cast<NodeId>(uniform_below(rng, n));
    s.stage_edge(u, v);
    oracle[u].push_back(v);
  }
  for (NodeId u = 0; u < n; ++u) EXPECT_EQ(s.staged(u), oracle[u]) << u;
}

TEST(Sketch, BudgetIsEnforcedAtEquality) {
  Sketch s(5, 4);
  NodeAttrs a(5);
  s.insert_rightmost_child(0, 1, a);
  s.stage_edge(1, 2);
  s.stage_edge(1, 3);
  EXPECT_FALSE(s.full());
  s.stage_edge(2, 3);
  EXPECT_TRUE(s.full());
  EXPECT_EQ(s.used(), 4u);
  EXPECT_THROW(s.stage_edge(3, 4), BudgetError);
  EXPECT_THROW(s.insert_rightmost_child(0, 4, a), BudgetError);
  EXPECT_EQ(s.peak_used(), 4u);
}

TEST(Sketch, PrunedSlotsAreReused) {
  Sketch s(6, 3);
  NodeAttrs a(6);
  s.insert_rightmost_child(0, 1, a);
  s.insert_rightmost_child(0, 2, a);
  s.insert_rightmost_child(1, 3, a);
  s.v_prune(0, nullptr);
  s.insert_rightmost_child(3, 4, a);
  s.stage_edge(4, 5);
  EXPECT_EQ(s.used(), 3u);
  EXPECT_EQ(s.children(1), (std::vector<NodeId>{3}));
  EXPECT_EQ(s.children(3), (std::vector<NodeId>{4}));
}

TEST(Sketch, DetachChild) {
  Sketch s(5, 10);
  NodeAttrs a(5);
  s.add_root_child(0);
  for (NodeId v : {1, 2, 3}) s.insert_rightmost_child(0, v, a);
  s.detach_child(3, a);
  EXPECT_EQ(s.children(0), (std::vector<NodeId>{1, 2}));
  EXPECT_EQ(s.rightmost_child(0), 2u);
  s.detach_child(1, a);
  EXPECT_EQ(s.children(0), (std::vector<NodeId>{2}));
  s.insert_rightmost_child(0, 3, a);
  EXPECT_EQ(s.children(0), (std::vector<NodeId>{2, 3}));
  s.detach_child(0, a);
  EXPECT_TRUE(s.root_children().empty());
  EXPECT_EQ(s.tree_edges(), 2u);
}

TEST(VPrune, LeafIsNoOp) {
  TempDir dir;
  Sketch s(3, 5);
  EvictedEdges log(dir.file("ev.log"), nullptr);
  s.v_prune(1, &log);
  EXPECT_EQ(log.size(), 0u);
}

TEST(VPrune, LogsChildrenWithRanks) {
  TempDir dir;
  Sketch s(4, 5);
  NodeAttrs a(4);
  a.B = {1, 2, 3, 4};
  s.insert_rightmost_child(0, 1, a);
  s.insert_rightmost_child(0, 2, a);
  s.insert_rightmost_child(1, 3, a);
  graphio::IoMeter meter;
  EvictedEdges log(dir.file("ev.log"), &meter);
  s.v_prune(0, &log);
  log.close();
  EXPECT_EQ(s.tree_edges(), 1u);
  EXPECT_TRUE(s.is_leaf(0));
  EXPECT_EQ(a.P[1], 0u);
  EXPECT_EQ(a.B[2], 3u);
  EXPECT_EQ(meter.bytes_written(), 24u);
  EXPECT_EQ(EvictedEdges::replay(dir.file("ev.log"), nullptr),
            (std::vector<EvictedRecord>{{0, 1, 0}, {0, 2, 1}}));
}

TEST(VPrune, ReplayRestoresChildLists) {
  TempDir dir;
  const std::size_t n = 200;
  Sketch s(n, n);
  NodeAttrs a(n);
  std::mt19937_64 rng(6);
  std::map<NodeId, std::vector<NodeId>> before;
  for (NodeId v = 1; v < n; ++v) {
    const auto p = static_cast<NodeId>(uniform_below(rng, v));
    s.insert_rightmost_child(p, v, a);
    before[p].push_back(v);
  }
  EvictedEdges log(dir.file("ev.log"), nullptr);
  for (NodeId u = 0; u < n; ++u) s.v_prune(u, &log);
  log.close();
  EXPECT_EQ(s.tree_edges(), 0u);
  std::map<NodeId, std::vector<NodeId>> after;
  for (const auto& r : EvictedEdges::replay(dir.file("ev.log"), nullptr)) {
    auto& kids = after[r.parent];
    ASSERT_EQ(kids.size(), r.rank);
    kids.push_back(r.child);
  }
  EXPECT_EQ(after, before);
}

TEST(VPrune, PruningAPrefixLeavesTheRest) {
  const std::size_t n = 100;
  Sketch s(n, n);
  NodeAttrs a(n);
  std::mt19937_64 rng(8);
  for (NodeId v = 1; v < n; ++v)
    s.insert_rightmost_child(static_cast<NodeId>(uniform_below(rng, v)), v, a);
  for (NodeId u = 0; u < 40; ++u) s.v_prune(u, nullptr);
  std::uint64_t remaining = 0;
  for (NodeId v = 1; v < n; ++v) remaining += a.P[v] >= 40;
  EXPECT_EQ(s.tree_edges(), remaining);
}

TEST(ResetPool, EmptyRangeGivesEmptySketch) {
  Sketch s(3, 5);
  NodeAttrs a(3);
  VisitOrder order(3);
  s.stage_edge(0, 1);
  s.reset_pool(order, 1, 1, a);
  EXPECT_EQ(s.used(), 0u);
  EXPECT_TRUE(s.root_children().empty());
}

TEST(ResetPool, RebuildsChildListsInBonOrder) {
  // Nodes 1, 3, 2 in that order; 1 hangs off the root, 3 and 2 off 1.
  Sketch s(4, 8);
  NodeAttrs a(4);
  VisitOrder order(3);
  order[1] = 1;
  order[2] = 3;
  order[3] = 2;
  a.B[1] = 1;
  a.B[3] = 2;
  a.B[2] = 3;
  a.P[1] = kRoot;
  a.P[3] = 1;
  a.P[2] = 1;
  s.reset_pool(order, 1, 4, a);
  EXPECT_EQ(s.children(1), (std::vector<NodeId>{3, 2}));
  EXPECT_EQ(s.root_children(), (std::vector<NodeId>{1}));
  const auto slots = s.child_slots(1);
  ASSERT_EQ(slots.size(), 2u);
  EXPECT_EQ(slots[1], slots[0] + 1);
}

TEST(ResetPool, SlotsAscendInBreadthFirstOrder) {
  // Breadth-first order means parents are nondecreasing along positions.
  const std::size_t n = 500;
  std::mt19937_64 rng(2);
  NodeAttrs a(n);
  VisitOrder order(n);
  NodeId parent = 0;
  for (NodeId v = 0; v < n; ++v) {
    order[v + 1] = v;
    a.B[v] = v + 1;
    if (v == 0 || uniform_below(rng, 20) == 0) continue;
    if (uniform_below(rng, 3) == 0 && parent + 1 < v) ++parent;
    a.P[v] = parent;
  }
  Sketch s(n, n);
  s.stage_edge(4, 5);
  s.reset_pool(order, 1, static_cast<Position>(n + 1), a);
  std::vector<std::uint32_t> slots;
  for (Position i = 1; i <= n; ++i) {
    for (std::uint32_t slot : s.child_slots(order[i])) slots.push_back(slot);
  }
  EXPECT_TRUE(std::is_sorted(slots.begin(), slots.end()));
  EXPECT_EQ(std::adjacent_find(slots.begin(), slots.end()), slots.end());
  std::uint64_t edges = 0;
  for (NodeId v = 0; v < n; ++v) edges += a.P[v] != kRoot;
  EXPECT_EQ(s.tree_edges(), edges);
  EXPECT_EQ(s.staged_edges(), 0u);
}

TEST(ResetPool, ParentNotYetPlacedIsALogicError) {
  Sketch s(3, 5);
  NodeAttrs a(3);
  VisitOrder order(3);
  order[1] = 0;
  order[2] = 1;
  a.B[0] = 1;
  a.B[1] = 2;
  a.P[0] = 1;
  a.P[1] = kRoot;
  EXPECT_THROW(s.reset_pool(order, 1, 3, a), std::logic_error);
}

TEST(ResetPool, ChildrenOfFinalizedParentsStayOnDisk) {
  Sketch s(3, 5);
  NodeAttrs a(3);
  VisitOrder order(3);
  order[1] = 0;
  order[2] = 1;
  order[3] = 2;
  a.B = {1, 2, 3};
  a.P = {kRoot, 0, 1};
  s.reset_pool(order, 2, 4, a);
  EXPECT_EQ(s.tree_edges(), 1u);
  EXPECT_EQ(s.children(1), (std::vector<NodeId>{2}));
  EXPECT_TRUE(s.root_children().empty());
}

TEST(EpochMarks, WrapClearsStaleMarks) {
  EpochMarks m(3);
  m.mark(1);
  EXPECT_TRUE(m.marked(1));
  m.next_epoch();
  EXPECT_FALSE(m.marked(1));
}

}  // namespace
}  // namespace sebfs::sketch
