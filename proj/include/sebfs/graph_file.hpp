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

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "sebfs/io.hpp"
#include "sebfs/types.hpp"

namespace sebfs::graphio {

// On-disk edge list:
//
//   offset  size  field
//   0       8     magic "SEBFSEDG"
//   8       4     version (1)
//   12      4     id width in bytes (4 or 8)
//   16      8     n, node count
//   24      8     m, edge count
//   32      ...   m records of (src, dst), little-endian, id-width bytes each
inline constexpr std::array<char, 8> kGraphMagic = {'S', 'E', 'B', 'F', 'S', 'E', 'D', 'G'};
inline constexpr std::uint32_t kGraphVersion = 1;
inline constexpr std::uint64_t kGraphHeaderBytes = 32;

struct GraphHeader {
  std::uint32_t version = kGraphVersion;
  unsigned id_width = 4;
  std::uint64_t n = 0;
  std::uint64_t m = 0;

  std::uint64_t record_bytes() const { return 2ull * id_width; }
  std::uint64_t payload_bytes() const { return m * record_bytes(); }
  std::uint64_t file_bytes() const { return kGraphHeaderBytes + payload_bytes(); }
};

/// Reads and validates the header, including the file-length consistency
/// check. The header bytes are credited to `meter` when one is given.
GraphHeader read_graph_header(const std::filesystem::path& path, IoMeter* meter = nullptr);

/// Streams edges into a GraphFile. When the edge count is not known up front
/// the header is written with m = 0 and patched on close().
class EdgeWriter {
 public:
  EdgeWriter(const std::filesystem::path& path, std::uint64_t n, IoMeter* meter,
             unsigned id_width = 4, std::optional<std::uint64_t> expected_m = std::nullopt);

  void append(Edge e) { append(e.src, e.dst); }
  void append(std::uint64_t src, std::uint64_t dst);

  std::uint64_t count() const { return count_; }
  const std::filesystem::path& path() const { return out_.path(); }

  GraphHeader close();

 private:
  ByteWriter out_;
  GraphHeader header_;
  std::optional<std::uint64_t> expected_m_;
  std::uint64_t count_ = 0;
  bool closed_ = false;
};

/// Sequential reader over a GraphFile. Every id is range-checked.
class EdgeReader {
 public:
  EdgeReader(const std::filesystem::path& path, IoMeter* meter);

  const GraphHeader& header() const { return header_; }
  std::uint64_t records_read() const { return read_; }

  bool next(Edge& e);

 private:
  ByteReader in_;
  GraphHeader header_;
  std::uint64_t read_ = 0;
};

GraphHeader write_edge_file(const std::filesystem::path& path, std::uint64_t n,
                            std::span<const Edge> edges, IoMeter* meter, unsigned id_width = 4);

std::vector<Edge> read_edge_file(const std::filesystem::path& path, IoMeter* meter,
                                 GraphHeader* header = nullptr);

// Adjacency-list scratch file used for the active scan list: a 32-byte header
// ("SEBFSADJ", version, reserved, n, m) followed by groups of
// (src, count, dst_1 .. dst_count), all 32-bit little-endian.
inline constexpr std::array<char, 8> kAdjMagic = {'S', 'E', 'B', 'F', 'S', 'A', 'D', 'J'};

/// Writes edges that arrive grouped by source. A source may not reappear once
/// a different source has been appended.
class AdjListWriter {
 public:
  AdjListWriter(const std::filesystem::path& path, std::uint64_t n, IoMeter* meter);

  void append(Edge e);
  std::uint64_t edges() const { return edges_; }
  const std::filesystem::path& path() const { return out_.path(); }
  std::uint64_t close();

 private:
  void flush_group();

  ByteWriter out_;
  std::uint64_t n_;
  std::vector<NodeId> pending_;
  NodeId pending_src_ = 0;
  bool has_pending_ = false;
  std::uint64_t edges_ = 0;
  bool closed_ = false;
};

class AdjListReader {
 public:
  AdjListReader(const std::filesystem::path& path, IoMeter* meter);

  std::uint64_t n() const { return n_; }
  std::uint64_t edges() const { return m_; }

  bool next(Edge& e);

 private:
  ByteReader in_;
  std::uint64_t n_ = 0;
  std::uint64_t m_ = 0;
  std::uint64_t consumed_ = 0;
  NodeId src_ = 0;
  std::uint32_t remaining_ = 0;
};

/// Owns a private scratch directory and removes it on destruction. The base
/// directory comes from $SEBFS_SCRATCH when set, else the system temp dir.
class ScratchDir {
 public:
  explicit ScratchDir(const std::filesystem::path& base = {});
  ~ScratchDir();

  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path file(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

std::filesystem::path default_scratch_base();

}  // namespace sebfs::graphio
