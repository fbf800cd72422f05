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

#include "sebfs/algos.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sebfs::algos {

namespace {

using Clock = std::chrono::steady_clock;

class RunGuard {
 public:
  RunGuard(const RunOptions& opt, std::uint64_t n)
      : start_(Clock::now()),
        limit_s_(opt.time_limit_s),
        watchdog_(opt.watchdog == 0 ? std::max<std::uint64_t>(n, 1) : opt.watchdog) {}

  double elapsed() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

  void check_time() const {
    if (limit_s_ > 0.0 && elapsed() > limit_s_) {
      throw TimeLimitError("time limit of " + std::to_string(limit_s_) + " s exceeded");
    }
  }

  // Called every few thousand edges inside a scan.
  void tick() {
    if ((++ticks_ & 0xFFFF) == 0) check_time();
  }

  void check_passes(std::uint64_t restructuring_passes) const {
    if (restructuring_passes > watchdog_) {
      throw WatchdogError("more than " + std::to_string(watchdog_) +
                          " restructuring passes; the tree did not converge");
    }
  }

 private:
  Clock::time_point start_;
  double limit_s_;
  std::uint64_t watchdog_;
  std::uint64_t ticks_ = 0;
};

void require_fits(std::uint64_t n) {
  if (n > kMaxNodes) {
    throw Error("graph has " + std::to_string(n) + " nodes; at most " + std::to_string(kMaxNodes) +
                " are supported");
  }
}

void finish(RunMetrics& m, const graphio::IoMeter& meter, const RunGuard& guard) {
  m.bytes_read = meter.bytes_read();
  m.bytes_written = meter.bytes_written();
  m.wall_seconds = guard.elapsed();
}

sketch::MemoryBreakdown footprint(const sketch::Sketch& sk, std::size_t n, bool with_marks) {
  sketch::MemoryBreakdown mem = sk.memory();
  mem.attrs_bytes = 2ull * n * sizeof(std::uint32_t);
  mem.order_bytes = (n + 1) * sizeof(NodeId);
  mem.marks_bytes = with_marks ? n * sizeof(std::uint32_t) : 0;
  return mem;
}

// Restart traversal of the in-memory tree: each root child's subtree is
// searched breadth-first before the next root child is started.
void assign_orders(const sketch::Sketch& sk, sketch::VisitOrder& queue, sketch::NodeAttrs& attrs) {
  Position head = 1;
  Position tail = 1;
  for (NodeId x : sk.root_children()) {
    queue[tail++] = x;
    while (head != tail) {
      const NodeId s = queue[head];
      attrs.B[s] = head;
      ++head;
      sk.for_each_child(s, [&](NodeId c) { queue[tail++] = c; });
    }
  }
}

}  // namespace

BfsTree star_tree(std::size_t n) {
  BfsTree t;
  t.B.resize(n);
  t.P.assign(n, kRoot);
  for (std::size_t v = 0; v < n; ++v) t.B[v] = static_cast<Position>(v + 1);
  return t;
}

// ---------------------------------------------------------------------------
// EE-BFS

RunResult ee_bfs(const std::filesystem::path& graph, const RunOptions& opt) {
  graphio::IoMeter meter;
  const graphio::GraphHeader h = graphio::read_graph_header(graph, &meter);
  require_fits(h.n);
  const std::size_t n = h.n;
  RunGuard guard(opt, n);
  RunResult res;

  sketch::NodeAttrs attrs(n);
  sketch::Sketch sk(n, n);
  sketch::VisitOrder queue(n);
  for (NodeId v = 0; v < n; ++v) {
    attrs.B[v] = v + 1;
    sk.add_root_child(v);
  }

  while (true) {
    bool changed = false;
    graphio::EdgeReader reader(graph, &meter);
    Edge e;
    while (reader.next(e)) {
      guard.tick();
      if (!is_vbfs_edge(e.src, e.dst, attrs.B, attrs.P)) continue;
      sk.detach_child(e.dst, attrs);
      sk.insert_rightmost_child(e.src, e.dst, attrs);
      assign_orders(sk, queue, attrs);
      ++res.metrics.imp_invocations;
      changed = true;
    }
    ++res.metrics.outer_iterations;
    guard.check_time();
    if (!changed) break;
    ++res.metrics.restructuring_passes;
    guard.check_passes(res.metrics.restructuring_passes);
  }

  res.tree.B = std::move(attrs.B);
  res.tree.P = std::move(attrs.P);
  res.metrics.capacity = sk.capacity();
  res.metrics.peak_in_memory_edges = sk.peak_used();
  res.metrics.memory = footprint(sk, n, false);
  finish(res.metrics, meter, guard);
  return res;
}

// ---------------------------------------------------------------------------
// EB-BFS

RunResult eb_bfs(const std::filesystem::path& graph, const RunOptions& opt) {
  if (!(opt.k > 0.0)) throw Error("K must be positive");
  graphio::IoMeter meter;
  const graphio::GraphHeader h = graphio::read_graph_header(graph, &meter);
  require_fits(h.n);
  const std::size_t n = h.n;
  RunGuard guard(opt, n);
  RunResult res;

  const std::uint64_t capacity = graphio::edge_capacity(n, opt.k);
  const std::uint64_t batch = capacity > n ? capacity - n : 1;
  sketch::NodeAttrs attrs(n);
  sketch::Sketch sk(n, capacity);
  sketch::VisitOrder order(n);
  sketch::EpochMarks marks(n);
  for (NodeId v = 0; v < n; ++v) {
    attrs.B[v] = v + 1;
    order[v + 1] = v;
    sk.add_root_child(v);
  }

  while (true) {
    bool changed = false;
    auto flush = [&] {
      const ReduceResult r = ep_reduce(sk, order, attrs, marks, 0, 0);
      if (r.end != n + 1) throw std::logic_error("im_bfs lost nodes");
      changed = changed || r.parent_changed;
      ++res.metrics.imp_invocations;
    };
    graphio::EdgeReader reader(graph, &meter);
    Edge e;
    while (reader.next(e)) {
      guard.tick();
      sk.stage_edge(e.src, e.dst);
      if (sk.staged_edges() == batch) flush();
    }
    if (sk.staged_edges() > 0) flush();
    ++res.metrics.outer_iterations;
    guard.check_time();
    if (!changed) break;
    ++res.metrics.restructuring_passes;
    guard.check_passes(res.metrics.restructuring_passes);
  }

  res.tree.B = std::move(attrs.B);
  res.tree.P = std::move(attrs.P);
  res.metrics.capacity = sk.capacity();
  res.metrics.peak_in_memory_edges = sk.peak_used();
  res.metrics.memory = footprint(sk, n, true);
  finish(res.metrics, meter, guard);
  return res;
}

// ---------------------------------------------------------------------------
// In-memory pieces

BfsTree im_bfs(const BfsTree& tree, std::span<const Edge> batch) {
  const std::size_t n = tree.size();
  std::vector<NodeId> by_pos(n, kRoot);
  for (NodeId v = 0; v < n; ++v) {
    const Position b = tree.B[v];
    if (b < 1 || b > n || by_pos[b - 1] != kRoot) {
      throw std::invalid_argument("tree positions are not a permutation");
    }
    by_pos[b - 1] = v;
  }
  std::vector<std::vector<NodeId>> kids(n);
  std::vector<NodeId> roots;
  for (NodeId v : by_pos) {
    if (tree.P[v] == kRoot) {
      roots.push_back(v);
    } else {
      kids[tree.P[v]].push_back(v);
    }
  }
  std::vector<std::vector<NodeId>> staged(n);
  for (const Edge& e : batch) staged[e.src].push_back(e.dst);

  BfsTree out;
  out.B.assign(n, 0);
  out.P.assign(n, kRoot);
  std::vector<char> marked(n, 0);
  std::vector<NodeId> queue;
  queue.reserve(n);
  Position next = 1;
  for (NodeId x : roots) {
    if (marked[x]) continue;
    marked[x] = 1;
    queue.push_back(x);
    for (std::size_t head = queue.size() - 1; head < queue.size(); ++head) {
      const NodeId s = queue[head];
      out.B[s] = next++;
      auto visit = [&](NodeId v) {
        if (marked[v]) return;
        marked[v] = 1;
        out.P[v] = s;
        queue.push_back(v);
      };
      for (NodeId v : kids[s]) visit(v);
      for (NodeId v : staged[s]) visit(v);
    }
  }
  return out;
}

ReduceResult ep_reduce(sketch::Sketch& sk, sketch::VisitOrder& order, sketch::NodeAttrs& attrs,
                       sketch::EpochMarks& marks, Position finalized, Position frontier) {
  marks.next_epoch();
  Position head = finalized + 1;
  Position tail = frontier + 1;
  for (Position p = head; p < tail; ++p) marks.mark(order[p]);

  ReduceResult res;
  auto add_q = [&](NodeId v, NodeId parent) {
    order[tail++] = v;
    if (attrs.P[v] != parent) {
      attrs.P[v] = parent;
      res.parent_changed = true;
    }
    marks.mark(v);
  };
  auto search = [&] {
    while (head != tail) {
      const NodeId s = order[head];
      attrs.B[s] = head;
      ++head;
      sk.for_each_child(s, [&](NodeId v) {
        if (!marks.marked(v)) add_q(v, s);
      });
      sk.for_each_staged(s, [&](NodeId v) {
        if (!marks.marked(v)) add_q(v, s);
      });
    }
  };

  search();
  // Root children that were not reached restart the search, in their old
  // breadth-first order. Finalized ones are skipped.
  for (NodeId x : sk.root_children()) {
    if (!marks.marked(x) && attrs.B[x] > finalized) {
      add_q(x, kRoot);
      search();
    }
  }
  sk.reset_pool(order, finalized + 1, head, attrs);
  res.end = head;
  return res;
}

Position find(Position lo, Position hi, const sketch::Sketch& sk, const sketch::VisitOrder& order,
              const sketch::NodeAttrs& attrs) {
  for (Position c = hi; c > lo; --c) {
    const NodeId x = sk.rightmost_child(order[c]);
    if (x != kRoot) return attrs.B[x];
  }
  return hi;
}

bool enlarge(graphio::AdjListWriter& next, Edge e, Position frontier, Position grand_frontier,
             const sketch::NodeAttrs& attrs) {
  if (attrs.B[e.src] > frontier && attrs.B[e.dst] > grand_frontier) {
    next.append(e);
    return true;
  }
  return false;
}

bool scan_list_rebuild_due(Position frontier, std::uint64_t rebuild_base, std::uint32_t rebuilds,
                           std::uint64_t n, std::uint64_t m, double gamma) {
  if (n == 0) return false;
  const double ratio = static_cast<double>(m) / static_cast<double>(n);
  const double bound =
      static_cast<double>(n) * gamma * std::pow(ratio, static_cast<double>(rebuilds));
  return static_cast<double>(frontier) - static_cast<double>(rebuild_base) > bound;
}

// ---------------------------------------------------------------------------
// ScanLists

ScanLists::ScanLists(std::filesystem::path dir, std::uint64_t n, graphio::IoMeter* meter)
    : dir_(std::move(dir)), n_(n), meter_(meter) {}

std::filesystem::path ScanLists::fresh_path() {
  return dir_ / ("scan-" + std::to_string(generation_++) + ".adj");
}

graphio::AdjListWriter& ScanLists::begin_initial() {
  next_path_ = fresh_path();
  next_.emplace(next_path_, n_, meter_);
  return *next_;
}

void ScanLists::seal_initial() { seal_next(); }

void ScanLists::open_next() {
  if (next_) throw std::logic_error("a replacement scan list is already open");
  next_path_ = fresh_path();
  next_.emplace(next_path_, n_, meter_);
}

void ScanLists::seal_next() {
  if (!next_) return;
  active_edges_ = next_->close();
  next_.reset();
  if (!active_.empty()) {
    std::error_code ec;
    std::filesystem::remove(active_, ec);
  }
  active_ = next_path_;
}

bool er_prune(Thresholds& th, ScanLists& lists, std::uint64_t n, std::uint64_t m, double gamma) {
  if (lists.next() != nullptr) lists.seal_next();
  if (!scan_list_rebuild_due(th.frontier, th.rebuild_base, th.rebuilds, n, m, gamma)) return false;
  lists.open_next();
  th.rebuild_base = th.frontier;
  ++th.rebuilds;
  return true;
}

BfsTree reset_tree(std::span<const NodeClass> cls, const sketch::NodeAttrs& attrs,
                   std::uint64_t active_nodes) {
  const std::size_t n = cls.size();
  std::uint64_t sinks = 0;
  for (NodeClass c : cls) sinks += c == NodeClass::kSink;

  BfsTree out;
  out.B.assign(n, 0);
  out.P.assign(n, kRoot);
  std::vector<char> seen(active_nodes + 1, 0);
  Position next_sink = 1;
  Position next_source = static_cast<Position>(sinks + active_nodes + 1);
  for (NodeId v = 0; v < n; ++v) {
    switch (cls[v]) {
      case NodeClass::kSink:
        out.B[v] = next_sink++;
        break;
      case NodeClass::kSource:
        out.B[v] = next_source++;
        break;
      case NodeClass::kActive: {
        const Position b = attrs.B[v];
        if (b < 1 || b > active_nodes || seen[b]) {
          throw std::logic_error("active order is not a permutation");
        }
        seen[b] = 1;
        out.B[v] = static_cast<Position>(sinks + b);
        out.P[v] = attrs.P[v];
        break;
      }
    }
  }
  return out;
}

}  // namespace sebfs::algos
