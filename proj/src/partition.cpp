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

#include "sebfs/partition.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace sebfs::graphio {

namespace {

void bump(std::uint32_t& counter) {
  if (counter == std::numeric_limits<std::uint32_t>::max()) {
    throw FormatError("degree exceeds 32-bit counter");
  }
  ++counter;
}

// Stable counting sort of one chunk by source, then written as a partition.
void flush_chunk(std::vector<Edge>& chunk, std::vector<std::uint32_t>& offsets,
                 std::vector<Edge>& sorted, std::uint64_t n, const std::filesystem::path& path,
                 IoMeter* meter) {
  std::fill(offsets.begin(), offsets.end(), 0);
  for (const Edge& e : chunk) {
    ++offsets[e.src + 1];
  }
  for (std::size_t i = 1; i < offsets.size(); ++i) {
    offsets[i] += offsets[i - 1];
  }
  sorted.resize(chunk.size());
  for (const Edge& e : chunk) {
    sorted[offsets[e.src]++] = e;
  }
  write_edge_file(path, n, sorted, meter, 4);
  chunk.clear();
}

}  // namespace

DegreeTable compute_degrees(const std::filesystem::path& graph, IoMeter* meter) {
  EdgeReader reader(graph, meter);
  DegreeTable deg;
  deg.indeg.assign(reader.header().n, 0);
  deg.outdeg.assign(reader.header().n, 0);
  Edge e;
  while (reader.next(e)) {
    bump(deg.outdeg[e.src]);
    bump(deg.indeg[e.dst]);
  }
  return deg;
}

std::uint64_t edge_capacity(std::uint64_t n, double k) {
  if (!(k >= 0.0) || !std::isfinite(k)) {
    throw Error("K must be a finite non-negative number");
  }
  return static_cast<std::uint64_t>(std::floor((1.0 + k) * static_cast<double>(n) + 1e-9));
}

std::filesystem::path partition_path(const std::filesystem::path& dir, std::size_t index) {
  return dir / ("part-" + std::to_string(index) + ".edges");
}

PartitionSet scan_g(const std::filesystem::path& graph, double k, std::uint64_t budget,
                    const std::filesystem::path& dir, IoMeter* meter, DegreeTable* degrees) {
  EdgeReader reader(graph, meter);
  const GraphHeader& h = reader.header();

  PartitionSet parts;
  parts.n = h.n;
  parts.m = h.m;
  parts.chunk = edge_capacity(h.n, k);
  if (h.m == 0) {
    if (degrees != nullptr) {
      degrees->indeg.assign(h.n, 0);
      degrees->outdeg.assign(h.n, 0);
    }
    return parts;
  }
  if (budget < parts.chunk) {
    throw BudgetError("budget of " + std::to_string(budget) +
                      " edges cannot hold one partition of " + std::to_string(parts.chunk));
  }

  if (degrees != nullptr) {
    degrees->indeg.assign(h.n, 0);
    degrees->outdeg.assign(h.n, 0);
  }
  std::vector<Edge> chunk;
  std::vector<Edge> sorted;
  std::vector<std::uint32_t> offsets(h.n + 1);
  chunk.reserve(static_cast<std::size_t>(std::min(parts.chunk, h.m)));

  auto emit = [&] {
    const auto path = partition_path(dir, parts.files.size());
    parts.sizes.push_back(chunk.size());
    flush_chunk(chunk, offsets, sorted, h.n, path, meter);
    parts.files.push_back(path);
  };

  Edge e;
  while (reader.next(e)) {
    if (degrees != nullptr) {
      bump(degrees->outdeg[e.src]);
      bump(degrees->indeg[e.dst]);
    }
    chunk.push_back(e);
    if (chunk.size() == parts.chunk) {
      emit();
    }
  }
  if (!chunk.empty()) {
    emit();
  }
  return parts;
}

// ---------------------------------------------------------------------------
// MergeReader

MergeReader::MergeReader(const PartitionSet& parts, const DegreeTable& degrees, IoMeter* meter)
    : degrees_(degrees) {
  if (degrees.size() != parts.n) {
    throw FormatError("degree table does not match the partitioned graph");
  }
  readers_.reserve(parts.count());
  current_.resize(parts.count());
  for (std::size_t i = 0; i < parts.count(); ++i) {
    readers_.emplace_back(parts.files[i], meter);
    if (readers_.back().header().n != parts.n) {
      throw FormatError("partition '" + parts.files[i].string() + "' has a different n");
    }
    advance(static_cast<std::uint32_t>(i));
  }
}

void MergeReader::advance(std::uint32_t part) {
  if (readers_[part].next(current_[part])) {
    heap_.push(Head{current_[part].src, part});
  }
}

bool MergeReader::next(SourceGroup& out) {
  if (heap_.empty()) {
    return false;
  }
  out.source = heap_.top().src;
  out.targets.clear();
  out.sink_edges.clear();
  if (has_last_ && out.source <= last_) {
    throw FormatError("partition is not sorted by source");
  }
  has_last_ = true;
  last_ = out.source;

  std::uint64_t seen = 0;
  while (!heap_.empty() && heap_.top().src == out.source) {
    const std::uint32_t part = heap_.top().part;
    heap_.pop();
    // Drain this partition's run for the source before moving to the next
    // partition, so ties resolve by partition index.
    do {
      const Edge& e = current_[part];
      if (degrees_.outdeg[e.dst] == 0) {
        out.sink_edges.push_back(e);
      } else {
        out.targets.push_back(e.dst);
      }
      ++seen;
      if (!readers_[part].next(current_[part])) {
        break;
      }
      if (current_[part].src != out.source) {
        if (current_[part].src < out.source) {
          throw FormatError("partition is not sorted by source");
        }
        heap_.push(Head{current_[part].src, part});
        break;
      }
    } while (true);
  }
  if (seen != degrees_.outdeg[out.source]) {
    throw FormatError("partitions disagree with the degree table at node " +
                      std::to_string(out.source));
  }
  return true;
}

}  // namespace sebfs::graphio
