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

#include <array>
#include <cstring>
#include <fstream>

#include "sebfs/graph_file.hpp"
#include "test_util.hpp"

namespace sebfs::graphio {
namespace {

using sebfs::testing::TempDir;

void write_raw(const std::filesystem::path& p, const std::vector<std::byte>& bytes) {
  std::ofstream f(p, std::ios::binary);
  f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

std::vector<std::byte> read_raw(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::vector<char> c((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  std::vector<std::byte> out(c.size());
  std::memcpy(out.data(), c.data(), c.size());
  return out;
}

TEST(GraphFile, EmptyEdgeSetRoundTrips) {
  TempDir dir;
  const auto p = dir.file("empty.edges");
  const GraphHeader h = write_edge_file(p, 5, {}, nullptr);
  EXPECT_EQ(h.n, 5u);
  EXPECT_EQ(h.m, 0u);
  GraphHeader back;
  EXPECT_TRUE(read_edge_file(p, nullptr, &back).empty());
  EXPECT_EQ(back.n, 5u);
  EXPECT_EQ(std::filesystem::file_size(p), kGraphHeaderBytes);
}

TEST(GraphFile, TwoEdgesRoundTripInOrder) {
  TempDir dir;
  const auto p = dir.file("two.edges");
  const std::vector<Edge> edges = {{0, 1}, {1, 2}};
  write_edge_file(p, 3, edges, nullptr);
  EXPECT_EQ(read_edge_file(p, nullptr), edges);
}

TEST(GraphFile, PayloadIsEightBytesPerEdgeAtWidthFour) {
  TempDir dir;
  const auto p = dir.file("big.edges");
  const auto edges = sebfs::testing::random_edges(1000, 1000000, 3);
  IoMeter meter;
  write_edge_file(p, 1000, edges, &meter, 4);
  EXPECT_EQ(std::filesystem::file_size(p), 8'000'000u + kGraphHeaderBytes);
  EXPECT_EQ(meter.bytes_written(), 8'000'000u + kGraphHeaderBytes);
  EXPECT_EQ(meter.bytes_read(), 0u);

  IoMeter rmeter;
  EXPECT_EQ(read_edge_file(p, &rmeter), edges);
  EXPECT_EQ(rmeter.bytes_read(), 8'000'000u + kGraphHeaderBytes);
}

TEST(GraphFile, WidthEightRoundTrip) {
  TempDir dir;
  const auto p = dir.file("w8.edges");
  const auto edges = sebfs::testing::random_edges(50, 300, 4);
  const GraphHeader h = write_edge_file(p, 50, edges, nullptr, 8);
  EXPECT_EQ(h.id_width, 8u);
  EXPECT_EQ(std::filesystem::file_size(p), kGraphHeaderBytes + 16 * edges.size());
  EXPECT_EQ(read_edge_file(p, nullptr), edges);
}

TEST(GraphFile, UnknownCountIsPatchedOnClose) {
  TempDir dir;
  const auto p = dir.file("stream.edges");
  IoMeter meter;
  EdgeWriter w(p, 4, &meter);
  w.append(0, 1);
  w.append(3, 2);
  w.append(2, 2);
  const GraphHeader h = w.close();
  EXPECT_EQ(h.m, 3u);
  EXPECT_EQ(read_graph_header(p).m, 3u);
  // Header written twice: placeholder, then the patch.
  EXPECT_EQ(meter.bytes_written(), 2 * kGraphHeaderBytes + 3 * 8);
}

TEST(GraphFile, RejectsOutOfRangeIdsOnWrite) {
  TempDir dir;
  EdgeWriter w(dir.file("bad.edges"), 3, nullptr);
  EXPECT_THROW(w.append(0, 3), Error);
  EXPECT_THROW(w.append(7, 0), Error);
}

TEST(GraphFile, RejectsMoreEdgesThanAnnounced) {
  TempDir dir;
  EdgeWriter w(dir.file("x.edges"), 3, nullptr, 4, 1);
  w.append(0, 1);
  EXPECT_THROW(w.append(1, 2), Error);
}

TEST(GraphFile, RejectsBadMagic) {
  TempDir dir;
  const auto p = dir.file("junk.edges");
  write_raw(p, std::vector<std::byte>(40, std::byte{0x41}));
  EXPECT_THROW(read_graph_header(p), FormatError);
}

TEST(GraphFile, RejectsLengthMismatch) {
  TempDir dir;
  const auto p = dir.file("g.edges");
  write_edge_file(p, 3, std::vector<Edge>{{0, 1}, {1, 2}}, nullptr);
  auto bytes = read_raw(p);
  bytes.resize(bytes.size() - 3);
  write_raw(p, bytes);
  EXPECT_THROW(read_graph_header(p), FormatError);
  EXPECT_THROW(EdgeReader(p, nullptr), FormatError);
}

TEST(GraphFile, RejectsStoredIdOutOfRange) {
  TempDir dir;
  const auto p = dir.file("g.edges");
  write_edge_file(p, 3, std::vector<Edge>{{0, 1}, {1, 2}}, nullptr);
  auto bytes = read_raw(p);
  store_le(9, 4, bytes.data() + kGraphHeaderBytes + 12);  // dst of the second record
  write_raw(p, bytes);
  EdgeReader r(p, nullptr);
  Edge e;
  EXPECT_TRUE(r.next(e));
  EXPECT_THROW(r.next(e), FormatError);
}

TEST(GraphFile, RejectsBadWidth) {
  TempDir dir;
  const auto p = dir.file("g.edges");
  write_edge_file(p, 3, {}, nullptr);
  auto bytes = read_raw(p);
  store_le(3, 4, bytes.data() + 12);
  write_raw(p, bytes);
  EXPECT_THROW(read_graph_header(p), FormatError);
}

TEST(GraphFile, MissingFileIsStorageError) {
  TempDir dir;
  EXPECT_THROW(read_graph_header(dir.file("nope.edges")), StorageError);
}

TEST(AdjList, RoundTripKeepsGroupsAndOrder) {
  TempDir dir;
  const auto p = dir.file("a.adj");
  const std::vector<Edge> edges = {{0, 3}, {0, 1}, {2, 2}, {4, 0}, {4, 1}, {4, 3}};
  IoMeter meter;
  {
    AdjListWriter w(p, 5, &meter);
    for (const Edge& e : edges) w.append(e);
    EXPECT_EQ(w.close(), edges.size());
  }
  // Header, then per group: source, count, targets.
  EXPECT_EQ(meter.bytes_written(), 2 * 32 + 4 * (3 * 2 + edges.size()));
  AdjListReader r(p, &meter);
  EXPECT_EQ(r.edges(), edges.size());
  std::vector<Edge> back;
  Edge e;
  while (r.next(e)) back.push_back(e);
  EXPECT_EQ(back, edges);
}

TEST(AdjList, EmptyList) {
  TempDir dir;
  const auto p = dir.file("e.adj");
  AdjListWriter w(p, 5, nullptr);
  w.close();
  AdjListReader r(p, nullptr);
  Edge e;
  EXPECT_FALSE(r.next(e));
}

TEST(IoMeter, ReaderCountsEveryByteOnce) {
  TempDir dir;
  const auto p = dir.file("m.edges");
  const auto edges = sebfs::testing::random_edges(100, 5000, 9);
  write_edge_file(p, 100, edges, nullptr);
  IoMeter meter;
  for (int pass = 0; pass < 3; ++pass) {
    EdgeReader r(p, &meter);
    Edge e;
    while (r.next(e)) {
    }
  }
  EXPECT_EQ(meter.bytes_read(), 3 * std::filesystem::file_size(p));
}

TEST(IoMeter, SmallBuffersDeliverTheSameBytes) {
  TempDir dir;
  const auto p = dir.file("s.edges");
  const auto edges = sebfs::testing::random_edges(100, 777, 10);
  write_edge_file(p, 100, edges, nullptr);
  IoMeter meter;
  ByteReader in(p, &meter, 64);
  std::vector<std::byte> all;
  std::array<std::byte, 7> chunk{};
  std::size_t total = 0;
  while (true) {
    const auto left = std::filesystem::file_size(p) - total;
    if (left == 0) break;
    const std::size_t take = std::min<std::size_t>(left, chunk.size());
    in.read_exact(std::span(chunk.data(), take));
    all.insert(all.end(), chunk.begin(), chunk.begin() + take);
    total += take;
  }
  EXPECT_EQ(all, read_raw(p));
  EXPECT_EQ(meter.bytes_read(), std::filesystem::file_size(p));
}

}  // namespace
}  // namespace sebfs::graphio
