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

#include "sebfs/graph_file.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <string>
#include <system_error>

namespace sebfs::graphio {

namespace {

std::array<std::byte, kGraphHeaderBytes> encode_header(const std::array<char, 8>& magic,
                                                       std::uint32_t version, std::uint32_t word,
                                                       std::uint64_t n, std::uint64_t m) {
  std::array<std::byte, kGraphHeaderBytes> out{};
  std::memcpy(out.data(), magic.data(), magic.size());
  store_le(version, 4, out.data() + 8);
  store_le(word, 4, out.data() + 12);
  store_le(n, 8, out.data() + 16);
  store_le(m, 8, out.data() + 24);
  return out;
}

std::uint64_t file_size_or_throw(const std::filesystem::path& path) {
  std::error_code ec;
  const auto size = std::filesystem::file_size(path, ec);
  if (ec) {
    throw StorageError("cannot stat '" + path.string() + "': " + ec.message());
  }
  return size;
}

GraphHeader parse_graph_header(const std::array<std::byte, kGraphHeaderBytes>& raw,
                               const std::filesystem::path& path) {
  if (std::memcmp(raw.data(), kGraphMagic.data(), kGraphMagic.size()) != 0) {
    throw FormatError("'" + path.string() + "' is not a graph file (bad magic)");
  }
  GraphHeader h;
  h.version = static_cast<std::uint32_t>(load_le(raw.data() + 8, 4));
  h.id_width = static_cast<unsigned>(load_le(raw.data() + 12, 4));
  h.n = load_le(raw.data() + 16, 8);
  h.m = load_le(raw.data() + 24, 8);
  if (h.version != kGraphVersion) {
    throw FormatError("'" + path.string() + "': unsupported version " + std::to_string(h.version));
  }
  if (h.id_width != 4 && h.id_width != 8) {
    throw FormatError("'" + path.string() + "': id width must be 4 or 8, got " +
                      std::to_string(h.id_width));
  }
  if (h.id_width == 4 && h.n > (std::uint64_t{1} << 32)) {
    throw FormatError("'" + path.string() + "': n does not fit 4-byte ids");
  }
  return h;
}

void check_width(unsigned id_width) {
  if (id_width != 4 && id_width != 8) {
    throw Error("id width must be 4 or 8");
  }
}

void check_length(const GraphHeader& h, const std::filesystem::path& path) {
  const std::uint64_t actual = file_size_or_throw(path);
  if (actual < kGraphHeaderBytes || h.m > (actual - kGraphHeaderBytes) / h.record_bytes() ||
      actual != h.file_bytes()) {
    throw FormatError("'" + path.string() + "': header claims " + std::to_string(h.m) +
                      " edges but file holds " + std::to_string(actual) + " bytes");
  }
}

GraphHeader read_header_from(ByteReader& in) {
  std::array<std::byte, kGraphHeaderBytes> raw{};
  in.read_exact(raw);
  GraphHeader h = parse_graph_header(raw, in.path());
  check_length(h, in.path());
  return h;
}

}  // namespace

GraphHeader read_graph_header(const std::filesystem::path& path, IoMeter* meter) {
  ByteReader in(path, meter, kGraphHeaderBytes);
  return read_header_from(in);
}

// ---------------------------------------------------------------------------
// EdgeWriter

EdgeWriter::EdgeWriter(const std::filesystem::path& path, std::uint64_t n, IoMeter* meter,
                       unsigned id_width, std::optional<std::uint64_t> expected_m)
    : out_(path, meter), expected_m_(expected_m) {
  check_width(id_width);
  if (id_width == 4 && n > (std::uint64_t{1} << 32)) {
    throw Error("n does not fit 4-byte ids");
  }
  header_.id_width = id_width;
  header_.n = n;
  header_.m = expected_m.value_or(0);
  const auto raw = encode_header(kGraphMagic, kGraphVersion, id_width, n, header_.m);
  out_.write(raw);
}

void EdgeWriter::append(std::uint64_t src, std::uint64_t dst) {
  if (src >= header_.n || dst >= header_.n) {
    throw Error("edge (" + std::to_string(src) + ", " + std::to_string(dst) +
                ") out of range for n = " + std::to_string(header_.n));
  }
  if (expected_m_ && count_ == *expected_m_) {
    throw Error("more edges than announced (" + std::to_string(*expected_m_) + ")");
  }
  out_.write_id(src, header_.id_width);
  out_.write_id(dst, header_.id_width);
  ++count_;
}

GraphHeader EdgeWriter::close() {
  if (closed_) {
    return header_;
  }
  closed_ = true;
  if (expected_m_) {
    if (count_ != *expected_m_) {
      throw Error("wrote " + std::to_string(count_) + " edges, announced " +
                  std::to_string(*expected_m_));
    }
  } else {
    header_.m = count_;
    out_.flush();
    const auto raw =
        encode_header(kGraphMagic, kGraphVersion, header_.id_width, header_.n, header_.m);
    out_.patch(0, raw);
  }
  out_.close();
  return header_;
}

// ---------------------------------------------------------------------------
// EdgeReader

EdgeReader::EdgeReader(const std::filesystem::path& path, IoMeter* meter) : in_(path, meter) {
  header_ = read_header_from(in_);
  if (header_.n > kMaxNodes) {
    throw FormatError("'" + path.string() + "': n = " + std::to_string(header_.n) +
                      " exceeds the supported node count");
  }
}

bool EdgeReader::next(Edge& e) {
  if (read_ == header_.m) {
    return false;
  }
  std::uint64_t src = 0;
  std::uint64_t dst = 0;
  if (!in_.try_read_id(header_.id_width, src) || !in_.try_read_id(header_.id_width, dst)) {
    throw FormatError("'" + in_.path().string() + "': truncated edge record");
  }
  if (src >= header_.n || dst >= header_.n) {
    throw FormatError("'" + in_.path().string() + "': edge (" + std::to_string(src) + ", " +
                      std::to_string(dst) + ") out of range for n = " + std::to_string(header_.n));
  }
  e.src = static_cast<NodeId>(src);
  e.dst = static_cast<NodeId>(dst);
  ++read_;
  return true;
}

GraphHeader write_edge_file(const std::filesystem::path& path, std::uint64_t n,
                            std::span<const Edge> edges, IoMeter* meter, unsigned id_width) {
  EdgeWriter w(path, n, meter, id_width, edges.size());
  for (const Edge& e : edges) {
    w.append(e);
  }
  return w.close();
}

std::vector<Edge> read_edge_file(const std::filesystem::path& path, IoMeter* meter,
                                 GraphHeader* header) {
  EdgeReader r(path, meter);
  std::vector<Edge> edges;
  edges.reserve(r.header().m);
  Edge e;
  while (r.next(e)) {
    edges.push_back(e);
  }
  if (header != nullptr) {
    *header = r.header();
  }
  return edges;
}

// ---------------------------------------------------------------------------
// Adjacency-list scratch files

AdjListWriter::AdjListWriter(const std::filesystem::path& path, std::uint64_t n, IoMeter* meter)
    : out_(path, meter), n_(n) {
  const auto raw = encode_header(kAdjMagic, 1, 0, n, 0);
  out_.write(raw);
}

void AdjListWriter::append(Edge e) {
  if (e.src >= n_ || e.dst >= n_) {
    throw Error("adjacency edge out of range");
  }
  if (!has_pending_ || e.src != pending_src_) {
    flush_group();
    pending_src_ = e.src;
    has_pending_ = true;
  }
  pending_.push_back(e.dst);
  ++edges_;
}

void AdjListWriter::flush_group() {
  if (!has_pending_ || pending_.empty()) {
    return;
  }
  out_.write_u32(pending_src_);
  out_.write_u32(static_cast<std::uint32_t>(pending_.size()));
  for (NodeId v : pending_) {
    out_.write_u32(v);
  }
  pending_.clear();
}

std::uint64_t AdjListWriter::close() {
  if (closed_) {
    return edges_;
  }
  closed_ = true;
  flush_group();
  out_.flush();
  const auto raw = encode_header(kAdjMagic, 1, 0, n_, edges_);
  out_.patch(0, raw);
  out_.close();
  return edges_;
}

AdjListReader::AdjListReader(const std::filesystem::path& path, IoMeter* meter) : in_(path, meter) {
  std::array<std::byte, kGraphHeaderBytes> raw{};
  in_.read_exact(raw);
  if (std::memcmp(raw.data(), kAdjMagic.data(), kAdjMagic.size()) != 0) {
    throw FormatError("'" + path.string() + "' is not an adjacency scratch file");
  }
  n_ = load_le(raw.data() + 16, 8);
  m_ = load_le(raw.data() + 24, 8);
}

bool AdjListReader::next(Edge& e) {
  while (remaining_ == 0) {
    if (consumed_ == m_) {
      return false;
    }
    src_ = in_.read_u32();
    remaining_ = in_.read_u32();
  }
  e.src = src_;
  e.dst = in_.read_u32();
  --remaining_;
  ++consumed_;
  return true;
}

// ---------------------------------------------------------------------------
// ScratchDir

std::filesystem::path default_scratch_base() {
  if (const char* env = std::getenv("SEBFS_SCRATCH"); env != nullptr && *env != '\0') {
    return env;
  }
  return std::filesystem::temp_directory_path();
}

ScratchDir::ScratchDir(const std::filesystem::path& base) {
  static std::atomic<std::uint64_t> counter{0};
  const std::filesystem::path root = base.empty() ? default_scratch_base() : base;
  std::filesystem::create_directories(root);
  const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
  for (int attempt = 0; attempt < 100; ++attempt) {
    const auto name = "sebfs-" + std::to_string(::getpid()) + "-" + std::to_string(stamp) + "-" +
                      std::to_string(counter++);
    std::error_code ec;
    if (std::filesystem::create_directory(root / name, ec)) {
      path_ = root / name;
      return;
    }
  }
  throw StorageError("cannot create scratch directory under '" + root.string() + "'");
}

ScratchDir::~ScratchDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

}  // namespace sebfs::graphio
