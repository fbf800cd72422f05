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

#include "sebfs/bfs_tree.hpp"

#include <cstring>
#include <string>

namespace sebfs {

void write_tree_file(const std::filesystem::path& path, const BfsTree& tree,
                     graphio::IoMeter* meter) {
  if (tree.B.size() != tree.P.size()) {
    throw Error("tree arrays differ in length");
  }
  graphio::ByteWriter out(path, meter);
  std::array<std::byte, 32> header{};
  std::memcpy(header.data(), kTreeMagic.data(), kTreeMagic.size());
  graphio::store_le(1, 4, header.data() + 8);
  graphio::store_le(4, 4, header.data() + 12);
  graphio::store_le(tree.size(), 8, header.data() + 16);
  out.write(header);
  for (Position b : tree.B) out.write_u32(b);
  for (NodeId p : tree.P) out.write_u32(p);
  out.close();
}

BfsTree read_tree_file(const std::filesystem::path& path, graphio::IoMeter* meter) {
  graphio::ByteReader in(path, meter);
  std::array<std::byte, 32> header{};
  in.read_exact(header);
  if (std::memcmp(header.data(), kTreeMagic.data(), kTreeMagic.size()) != 0) {
    throw FormatError("'" + path.string() + "' is not a tree file (bad magic)");
  }
  if (graphio::load_le(header.data() + 8, 4) != 1 || graphio::load_le(header.data() + 12, 4) != 4) {
    throw FormatError("'" + path.string() + "': unsupported tree file version or width");
  }
  const std::uint64_t n = graphio::load_le(header.data() + 16, 8);
  std::error_code ec;
  const auto size = std::filesystem::file_size(path, ec);
  if (ec || size != 32 + 8 * n) {
    throw FormatError("'" + path.string() + "': length does not match n = " + std::to_string(n));
  }
  BfsTree tree;
  tree.B.resize(n);
  tree.P.resize(n);
  for (auto& b : tree.B) b = in.read_u32();
  for (auto& p : tree.P) p = in.read_u32();
  return tree;
}

}  // namespace sebfs
