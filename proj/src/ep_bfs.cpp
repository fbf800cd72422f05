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

#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <string>

#include "sebfs/algos.hpp"

namespace sebfs::algos {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void check_time(Clock::time_point t0, double limit_s) {
  if (limit_s > 0.0 && seconds_since(t0) > limit_s) {
    throw TimeLimitError("time limit of " + std::to_string(limit_s) + " s exceeded");
  }
}

void audit_evicted(const std::filesystem::path& log_path, const sketch::Sketch& sk,
                   const sketch::NodeAttrs& attrs, std::span<const NodeClass> cls) {
  const auto records = sketch::EvictedEdges::replay(log_path, nullptr);
  std::uint64_t expected = 0;
  for (NodeId v = 0; v < cls.size(); ++v) {
    if (cls[v] == NodeClass::kActive && attrs.P[v] != kRoot) ++expected;
  }
  for (const auto& r : records) {
    if (attrs.P[r.child] != r.parent) {
      throw std::logic_error("evicted edge (" + std::to_string(r.parent) + ", " +
                             std::to_string(r.child) + ") disagrees with the parent array");
    }
  }
  if (records.size() + sk.tree_edges() != expected) {
    throw std::logic_error("evicted plus in-memory tree edges do not cover the tree");
  }
}

}  // namespace

RunResult ep_bfs(const std::filesystem::path& graph, const RunOptions& opt) {
  if (!(opt.k > 0.0)) throw Error("K must be positive");
  if (!(opt.gamma > 0.0 && opt.gamma < 1.0)) throw Error("gamma must lie in (0, 1)");
  const auto t0 = Clock::now();
  graphio::IoMeter meter;
  graphio::ScratchDir scratch(opt.scratch_base);
  RunResult res;
  RunMetrics& met = res.metrics;

  // Partition the raw file and count degrees in the same pass.
  const graphio::GraphHeader h = graphio::read_graph_header(graph, &meter);
  if (h.n > kMaxNodes) {
    throw Error("graph has " + std::to_string(h.n) + " nodes; at most " +
                std::to_string(kMaxNodes) + " are supported");
  }
  const std::size_t n = h.n;
  const std::uint64_t capacity = graphio::edge_capacity(n, opt.k);
  graphio::DegreeTable deg;
  graphio::PartitionSet parts =
      graphio::scan_g(graph, opt.k, capacity, scratch.path(), &meter, &deg);
  const std::uint64_t m = parts.m;
  met.partitions = parts.count();
  met.capacity = capacity;

  std::vector<NodeClass> cls(n, NodeClass::kActive);
  std::uint64_t active_count = 0;
  for (NodeId v = 0; v < n; ++v) {
    if (deg.outdeg[v] == 0) {
      cls[v] = NodeClass::kSink;
    } else if (deg.indeg[v] == 0) {
      cls[v] = NodeClass::kSource;
    } else {
      ++active_count;
    }
  }
  met.active_nodes = active_count;

  sketch::NodeAttrs attrs(n);
  sketch::Sketch sk(n, capacity);
  sketch::VisitOrder order(n);
  sketch::EpochMarks marks(n);
  for (NodeId v = 0; v < n; ++v) {
    if (cls[v] == NodeClass::kActive) {
      attrs.B[v] = static_cast<Position>(n + 1 + v);
      sk.add_root_child(v);
    }
  }

  const std::uint64_t watchdog = opt.watchdog == 0 ? std::max<std::uint64_t>(n, 1) : opt.watchdog;
  auto reduce = [&](Position finalized, Position frontier) {
    const ReduceResult r = ep_reduce(sk, order, attrs, marks, finalized, frontier);
    if (r.end != active_count + 1) {
      throw std::logic_error("reduce placed " + std::to_string(r.end - 1) + " of " +
                             std::to_string(active_count) + " active nodes");
    }
    ++met.imp_invocations;
  };

  // Setup: route every edge, build the initial scan list, and fold its edges
  // into the sketch whenever the budget fills up.
  ScanLists lists(scratch.path(), n, &meter);
  {
    graphio::AdjListWriter& initial = lists.begin_initial();
    graphio::MergeReader merge(parts, deg, &meter);
    graphio::SourceGroup g;
    std::uint64_t ticks = 0;
    while (merge.next(g)) {
      met.sink_edges += g.sink_edges.size();
      if (cls[g.source] == NodeClass::kSource) {
        met.source_edges += g.targets.size();
        continue;
      }
      for (NodeId v : g.targets) {
        initial.append(Edge{g.source, v});
        sk.stage_edge(g.source, v);
        if (sk.full()) reduce(0, 0);
      }
      if ((++ticks & 0xFFF) == 0) check_time(t0, opt.time_limit_s);
    }
    lists.seal_initial();
  }
  met.scan_list_edges = lists.active_edges();
  met.memory = sk.memory();
  met.memory.degree_bytes = 2ull * n * sizeof(std::uint32_t);
  deg = graphio::DegreeTable{};
  for (const auto& p : parts.files) {
    std::error_code ec;
    std::filesystem::remove(p, ec);
  }
  reduce(0, 0);

  sketch::EvictedEdges evicted(scratch.file("evicted.log"), &meter);
  Thresholds th;
  std::uint64_t edge_ticks = 0;
  while (th.finalized < active_count) {
    th.flush_bounds.assign(1, kInfinity);
    std::size_t i = 0;
    {
      graphio::AdjListReader scan(lists.active(), &meter);
      graphio::AdjListWriter* next = lists.next();
      const Position finalized = th.finalized;
      const Position frontier = th.frontier;
      Edge e;
      while (scan.next(e)) {
        if ((++edge_ticks & 0xFFFF) == 0) check_time(t0, opt.time_limit_s);
        const NodeId u = e.src;
        const NodeId v = e.dst;
        const Position bu = attrs.B[u];
        const Position bv = attrs.B[v];
        if (bu <= finalized || bv <= frontier) continue;
        if (next != nullptr) enlarge(*next, e, frontier, th.grand_frontier, attrs);
        if (th.flush_bounds[i] <= bu && attrs.P[v] != u) {
          if (bv >= th.flush_bounds[i]) sk.stage_edge(u, v);
        } else if (is_vbfs_edge(u, v, attrs.B, attrs.P)) {
          th.flush_bounds[i] = bu;
          sk.stage_edge(u, v);
        }
        if (sk.full()) {
          reduce(finalized, frontier);
          ++i;
          th.flush_bounds.push_back(kInfinity);
        }
      }
    }
    if (sk.staged_edges() > 0) reduce(th.finalized, th.frontier);
    ++met.outer_iterations;
    check_time(t0, opt.time_limit_s);

    const Position lowest = *std::min_element(th.flush_bounds.begin(), th.flush_bounds.end());
    if (lowest == kInfinity) break;
    ++met.restructuring_passes;
    if (met.restructuring_passes > watchdog) {
      throw WatchdogError("more than " + std::to_string(watchdog) +
                          " restructuring passes; the tree did not converge");
    }

    const Position prev_finalized = th.finalized;
    const auto top = static_cast<Position>(active_count);
    auto last_child = [&](Position hi) { return find(prev_finalized, hi, sk, order, attrs); };
    Position finalized = std::max({lowest, last_child(lowest - 1), th.frontier});
    finalized = std::min(finalized, top);
    const Position frontier =
        std::max(finalized, last_child(std::min<Position>(finalized + 1, top)));
    const Position grand_frontier = std::max(frontier, last_child(frontier));
    for (Position p = prev_finalized + 1; p <= finalized; ++p) sk.v_prune(order[p], &evicted);
    th.finalized = finalized;
    th.frontier = frontier;
    th.grand_frontier = grand_frontier;
    met.finalized_history.push_back(finalized);
    er_prune(th, lists, n, m, opt.gamma);
  }
  evicted.close();
  met.evicted_edges = evicted.size();
  met.scan_list_rebuilds = th.rebuilds;

  if (opt.audit) audit_evicted(evicted.path(), sk, attrs, cls);

  res.tree = reset_tree(cls, attrs, active_count);
  met.peak_in_memory_edges = sk.peak_used();
  const std::uint64_t degree_bytes = met.memory.degree_bytes;
  met.memory = sk.memory();
  met.memory.attrs_bytes = 2ull * n * sizeof(std::uint32_t);
  met.memory.order_bytes = (n + 1) * sizeof(NodeId);
  met.memory.marks_bytes = n * sizeof(std::uint32_t);
  met.memory.degree_bytes = degree_bytes;
  met.bytes_read = meter.bytes_read();
  met.bytes_written = meter.bytes_written();
  met.wall_seconds = seconds_since(t0);
  return res;
}

}  // namespace sebfs::algos
