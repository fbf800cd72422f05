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

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "sebfs/types.hpp"

namespace sebfs::graphio {

/// Counts every byte that crosses the storage boundary. Shared by all streams
/// that take part in one run; updates are atomic so a read-ahead thread may
/// credit it concurrently.
class IoMeter {
 public:
  void add_read(std::uint64_t bytes) { read_.fetch_add(bytes, std::memory_order_relaxed); }
  void add_written(std::uint64_t bytes) { written_.fetch_add(bytes, std::memory_order_relaxed); }

  std::uint64_t bytes_read() const { return read_.load(std::memory_order_relaxed); }
  std::uint64_t bytes_written() const { return written_.load(std::memory_order_relaxed); }
  std::uint64_t total() const { return bytes_read() + bytes_written(); }

 private:
  std::atomic<std::uint64_t> read_{0};
  std::atomic<std::uint64_t> written_{0};
};

inline constexpr std::size_t kDefaultBufferBytes = std::size_t{1} << 20;

/// Buffered sequential writer. Bytes are credited to the meter when they are
/// handed to the operating system, not when they are buffered.
class ByteWriter {
 public:
  ByteWriter() = default;
  ByteWriter(const std::filesystem::path& path, IoMeter* meter,
             std::size_t buffer_bytes = kDefaultBufferBytes);
  ~ByteWriter();

  ByteWriter(ByteWriter&& other) noexcept;
  ByteWriter& operator=(ByteWriter&& other) noexcept;
  ByteWriter(const ByteWriter&) = delete;
  ByteWriter& operator=(const ByteWriter&) = delete;

  bool is_open() const { return file_ != nullptr; }
  const std::filesystem::path& path() const { return path_; }

  void write(std::span<const std::byte> bytes);
  void write_u32(std::uint32_t value);
  void write_u64(std::uint64_t value);
  void write_id(std::uint64_t value, unsigned width);

  // Overwrites bytes at an absolute offset that has already been flushed
  // (used to patch headers).
  void patch(std::uint64_t offset, std::span<const std::byte> bytes);

  void flush();
  void close();

 private:
  void release() noexcept;

  std::FILE* file_ = nullptr;
  std::filesystem::path path_;
  IoMeter* meter_ = nullptr;
  std::vector<std::byte> buffer_;
  std::size_t used_ = 0;
};

/// Buffered sequential reader.
class ByteReader {
 public:
  ByteReader() = default;
  ByteReader(const std::filesystem::path& path, IoMeter* meter,
             std::size_t buffer_bytes = kDefaultBufferBytes);
  ~ByteReader();

  ByteReader(ByteReader&& other) noexcept;
  ByteReader& operator=(ByteReader&& other) noexcept;
  ByteReader(const ByteReader&) = delete;
  ByteReader& operator=(const ByteReader&) = delete;

  bool is_open() const { return file_ != nullptr; }
  const std::filesystem::path& path() const { return path_; }

  // Returns false on clean end of file before any byte was read; throws
  // FormatError on a short read.
  bool read(std::span<std::byte> out);
  void read_exact(std::span<std::byte> out);
  std::uint32_t read_u32();
  std::uint64_t read_u64();
  bool try_read_id(unsigned width, std::uint64_t& value);

  void close();

 private:
  bool refill();
  void release() noexcept;

  std::FILE* file_ = nullptr;
  std::filesystem::path path_;
  IoMeter* meter_ = nullptr;
  std::vector<std::byte> buffer_;
  std::size_t begin_ = 0;
  std::size_t end_ = 0;
  bool eof_ = false;
};

// Little-endian encode/decode of fixed-width integers.
void store_le(std::uint64_t value, unsigned width, std::byte* out);
std::uint64_t load_le(const std::byte* in, unsigned width);

}  // namespace sebfs::graphio
