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

#include "sebfs/oracle.hpp"

#include <bit>
#include <stdexcept>

#include "sebfs/graph_file.hpp"

namespace sebfs::oracle {

InMemGraph InMemGraph::from_edges(std::size_t n, std::span<const Edge> edges) {
  InMemGraph g;
  g.n = n;
  g.out.resize(n);
  for (const Edge& e : edges) {
    if (e.src >= n || e.dst >= n) throw std::invalid_argument("edge out of range");
    g.out[e.src].push_back(e.dst);
  }
  return g;
}

InMemGraph InMemGraph::load(const std::filesystem::path& path, graphio::IoMeter* meter) {
  graphio::GraphHeader h;
  const auto edges = graphio::read_edge_file(path, meter, &h);
  return from_edges(h.n, edges);
}

std::uint64_t InMemGraph::edge_count() const {
  std::uint64_t m = 0;
  for (const auto& adj : out) m += adj.size();
  return m;
}

BfsTree reference_bfs(const InMemGraph& g, std::span<const NodeId> restart_order) {
  BfsTree t;
  t.B.assign(g.n, 0);
  t.P.assign(g.n, kRoot);
  std::vector<char> marked(g.n, 0);
  std::vector<NodeId> queue;
  queue.reserve(g.n);
  Position next = 1;
  for (NodeId x : restart_order) {
    if (marked[x]) continue;
    marked[x] = 1;
    queue.push_back(x);
    for (std::size_t head = queue.size() - 1; head < queue.size(); ++head) {
      const NodeId u = queue[head];
      t.B[u] = next++;
      for (NodeId v : g.out[u]) {
        if (marked[v]) continue;
        marked[v] = 1;
        t.P[v] = u;
        queue.push_back(v);
      }
    }
  }
  if (queue.size() != g.n) throw std::invalid_argument("restart order does not cover all nodes");
  return t;
}

BfsTree reference_bfs(const InMemGraph& g) {
  std::vector<NodeId> order(g.n);
  for (NodeId v = 0; v < g.n; ++v) order[v] = v;
  return reference_bfs(g, order);
}

std::vector<std::string> check_structure(const BfsTree& tree, std::size_t n) {
  std::vector<std::string> errs;
  if (tree.B.size() != n || tree.P.size() != n) {
    errs.push_back("tree has " + std::to_string(tree.B.size()) + " nodes, graph has " +
                   std::to_string(n));
    return errs;
  }
  std::vector<NodeId> by_pos(n, kRoot);
  for (NodeId v = 0; v < n; ++v) {
    const Position b = tree.B[v];
    if (b < 1 || b > n) {
      errs.push_back("B[" + std::to_string(v) + "] = " + std::to_string(b) + " out of range");
    } else if (by_pos[b - 1] != kRoot) {
      errs.push_back("position " + std::to_string(b) + " used twice");
    } else {
      by_pos[b - 1] = v;
    }
  }
  for (NodeId v = 0; v < n; ++v) {
    const NodeId p = tree.P[v];
    if (p == v) {
      errs.push_back("node " + std::to_string(v) + " is its own parent");
    } else if (p != kRoot && p >= n) {
      errs.push_back("P[" + std::to_string(v) + "] out of range");
    }
  }
  if (!errs.empty()) return errs;

  // Walking nodes in B order, the position at which each one was enqueued
  // must never decrease. A root child is enqueued only once the queue is
  // empty, i.e. just before its own position. Doubled to stay integral.
  std::uint64_t last_key = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const NodeId v = by_pos[i];
    const NodeId p = tree.P[v];
    std::uint64_t key;
    if (p == kRoot) {
      key = 2ull * tree.B[v] - 1;
    } else {
      if (tree.B[p] >= tree.B[v]) {
        errs.push_back("parent " + std::to_string(p) + " of node " + std::to_string(v) +
                       " is not placed before it");
        continue;
      }
      key = 2ull * tree.B[p];
    }
    if (key < last_key) {
      errs.push_back("node " + std::to_string(v) + " at position " + std::to_string(i + 1) +
                     " breaks breadth-first order of the tree");
    }
    last_key = std::max(last_key, key);
  }
  return errs;
}

namespace {

void check_edge(Validation& out, const BfsTree& tree, Edge e, std::size_t max_reported) {
  ++out.edges_checked;
  if (is_vbfs_edge(e.src, e.dst, tree.B, tree.P)) {
    ++out.violation_count;
    if (out.violations.size() < max_reported) out.violations.push_back(e);
  }
}

}  // namespace

Validation validate_bfs_tree(const std::filesystem::path& graph, const BfsTree& tree,
                             graphio::IoMeter* meter, std::size_t max_reported) {
  graphio::EdgeReader reader(graph, meter);
  Validation out;
  out.structural = check_structure(tree, reader.header().n);
  if (!out.structural.empty()) return out;
  Edge e;
  while (reader.next(e)) check_edge(out, tree, e, max_reported);
  return out;
}

Validation validate_bfs_tree(const InMemGraph& g, const BfsTree& tree, std::size_t max_reported) {
  Validation out;
  out.structural = check_structure(tree, g.n);
  if (!out.structural.empty()) return out;
  for (NodeId u = 0; u < g.n; ++u) {
    for (NodeId v : g.out[u]) check_edge(out, tree, Edge{u, v}, max_reported);
  }
  return out;
}

namespace {

struct PathSearch {
  const InMemGraph& g;
  std::vector<char> on_path;
  std::uint32_t best = 0;
  std::uint32_t ceiling;

  bool extend(NodeId u, std::uint32_t len) {
    best = std::max(best, len);
    if (best == ceiling) return true;
    for (NodeId v : g.out[u]) {
      if (on_path[v]) continue;
      on_path[v] = 1;
      const bool done = extend(v, len + 1);
      on_path[v] = 0;
      if (done) return true;
    }
    return false;
  }
};

}  // namespace

std::uint32_t brute_llsp(const InMemGraph& g) {
  if (g.n > kMaxBruteForceNodes) {
    throw std::invalid_argument("brute_llsp is limited to " + std::to_string(kMaxBruteForceNodes) +
                                " nodes");
  }
  if (g.n == 0) return 0;
  PathSearch s{g, std::vector<char>(g.n, 0), 0, static_cast<std::uint32_t>(g.n - 1)};
  for (NodeId start = 0; start < g.n; ++start) {
    s.on_path[start] = 1;
    const bool done = s.extend(start, 0);
    s.on_path[start] = 0;
    if (done) break;
  }
  return s.best;
}

std::uint32_t llsp_subset_dp(const InMemGraph& g) {
  if (g.n > 20) throw std::invalid_argument("llsp_subset_dp is limited to 20 nodes");
  if (g.n == 0) return 0;
  const std::size_t n = g.n;
  // ends[mask] has bit v set when some simple path covers exactly `mask`
  // and ends at v.
  std::vector<std::uint32_t> ends(std::size_t{1} << n, 0);
  for (std::size_t v = 0; v < n; ++v) ends[std::size_t{1} << v] |= 1u << v;
  std::uint32_t best = 0;
  for (std::size_t mask = 1; mask < ends.size(); ++mask) {
    std::uint32_t at = ends[mask];
    if (at == 0) continue;
    best = std::max<std::uint32_t>(best, std::popcount(mask) - 1);
    while (at != 0) {
      const int u = std::countr_zero(at);
      at &= at - 1;
      for (NodeId v : g.out[u]) {
        if (mask & (std::size_t{1} << v)) continue;
        ends[mask | (std::size_t{1} << v)] |= 1u << v;
      }
    }
  }
  return best;
}

}  // namespace sebfs::oracle
