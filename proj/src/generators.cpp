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

#include "sebfs/generators.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "sebfs/random.hpp"

namespace sebfs::graphio {

namespace {

std::uint64_t pack(std::uint64_t u, std::uint64_t v) { return (u << 32) | v; }

std::uint64_t random_pair(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t u = uniform_below(rng, n);
  std::uint64_t v = uniform_below(rng, n - 1);
  if (v >= u) {
    ++v;
  }
  return pack(u, v);
}

void shuffle_prefix(std::vector<std::uint64_t>& keys, std::size_t count, std::mt19937_64& rng) {
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + uniform_below(rng, keys.size() - i);
    std::swap(keys[i], keys[j]);
  }
}

}  // namespace

GraphHeader generate_er(const std::filesystem::path& out, std::uint64_t n, std::uint64_t m,
                        std::uint64_t seed, IoMeter* meter) {
  if (n > (std::uint64_t{1} << 32)) {
    throw Error("generate_er supports at most 2^32 nodes");
  }
  const std::uint64_t pairs = n < 2 ? 0 : n * (n - 1);
  if (m > pairs) {
    throw Error("m = " + std::to_string(m) + " exceeds the " + std::to_string(pairs) +
                " ordered pairs of a simple digraph on " + std::to_string(n) + " nodes");
  }
  if (m > kMaxGeneratedEdges) {
    throw Error("m = " + std::to_string(m) + " exceeds the generator cap of " +
                std::to_string(kMaxGeneratedEdges));
  }

  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> keys;
  if (pairs <= 2 * m) {
    // Dense: enumerate every pair and draw m of them without replacement.
    keys.reserve(pairs);
    for (std::uint64_t u = 0; u < n; ++u) {
      for (std::uint64_t v = 0; v < n; ++v) {
        if (u != v) {
          keys.push_back(pack(u, v));
        }
      }
    }
    shuffle_prefix(keys, m, rng);
    keys.resize(m);
  } else {
    // Sparse: draw pairs until m distinct ones are collected, then shuffle
    // so the file order is random as well.
    keys.reserve(m);
    std::vector<std::uint64_t> batch;
    while (keys.size() < m) {
      batch.clear();
      const std::size_t missing = m - keys.size();
      for (std::size_t i = 0; i < missing; ++i) {
        batch.push_back(random_pair(rng, n));
      }
      std::sort(batch.begin(), batch.end());
      batch.erase(std::unique(batch.begin(), batch.end()), batch.end());
      const std::size_t old = keys.size();
      std::set_difference(batch.begin(), batch.end(), keys.begin(), keys.begin() + old,
                          std::back_inserter(keys));
      std::inplace_merge(keys.begin(), keys.begin() + old, keys.end());
    }
    shuffle_prefix(keys, keys.size(), rng);
  }

  EdgeWriter writer(out, n, meter, 4, m);
  for (std::uint64_t key : keys) {
    writer.append(key >> 32, key & 0xFFFFFFFFu);
  }
  return writer.close();
}

GraphHeader subsample(const std::filesystem::path& in, const std::filesystem::path& out, double p,
                      std::uint64_t seed, IoMeter* meter) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw Error("subsample probability must lie in (0, 1]");
  }
  EdgeReader reader(in, meter);
  EdgeWriter writer(out, reader.header().n, meter, reader.header().id_width);
  std::mt19937_64 rng(seed);
  Edge e;
  while (reader.next(e)) {
    if (uniform_unit(rng) < p) {
      writer.append(e);
    }
  }
  return writer.close();
}

}  // namespace sebfs::graphio
