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

#include "sebfs/io.hpp"

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <utility>

namespace sebfs::graphio {

namespace {

std::string describe(const std::filesystem::path& path, const char* what) {
  return std::string(what) + " '" + path.string() + "': " + std::strerror(errno);
}

}  // namespace

void store_le(std::uint64_t value, unsigned width, std::byte* out) {
  for (unsigned i = 0; i < width; ++i) {
    out[i] = static_cast<std::byte>((value >> (8 * i)) & 0xFF);
  }
}

std::uint64_t load_le(const std::byte* in, unsigned width) {
  std::uint64_t value = 0;
  for (unsigned i = 0; i < width; ++i) {
    value |= static_cast<std::uint64_t>(in[i]) << (8 * i);
  }
  return value;
}

// ---------------------------------------------------------------------------
// ByteWriter

ByteWriter::ByteWriter(const std::filesystem::path& path, IoMeter* meter, std::size_t buffer_bytes)
    : path_(path), meter_(meter), buffer_(std::max<std::size_t>(buffer_bytes, 64)) {
  file_ = std::fopen(path.c_str(), "wb+");
  if (file_ == nullptr) {
    throw StorageError(describe(path, "cannot open for writing"));
  }
}

ByteWriter::~ByteWriter() {
  if (file_ != nullptr) {
    try {
      flush();
    } catch (...) {
    }
    release();
  }
}

ByteWriter::ByteWriter(ByteWriter&& other) noexcept
    : file_(std::exchange(other.file_, nullptr)),
      path_(std::move(other.path_)),
      meter_(other.meter_),
      buffer_(std::move(other.buffer_)),
      used_(std::exchange(other.used_, 0)) {}

ByteWriter& ByteWriter::operator=(ByteWriter&& other) noexcept {
  if (this != &other) {
    if (file_ != nullptr) {
      try {
        flush();
      } catch (...) {
      }
      release();
    }
    file_ = std::exchange(other.file_, nullptr);
    path_ = std::move(other.path_);
    meter_ = other.meter_;
    buffer_ = std::move(other.buffer_);
    used_ = std::exchange(other.used_, 0);
  }
  return *this;
}

void ByteWriter::write(std::span<const std::byte> bytes) {
  while (!bytes.empty()) {
    if (used_ == buffer_.size()) flush();
    const std::size_t take = std::min(bytes.size(), buffer_.size() - used_);
    std::memcpy(buffer_.data() + used_, bytes.data(), take);
    used_ += take;
    bytes = bytes.subspan(take);
  }
}

void ByteWriter::write_u32(std::uint32_t value) { write_id(value, 4); }

void ByteWriter::write_u64(std::uint64_t value) { write_id(value, 8); }

void ByteWriter::write_id(std::uint64_t value, unsigned width) {
  if (buffer_.size() - used_ < width) flush();
  store_le(value, width, buffer_.data() + used_);
  used_ += width;
}

void ByteWriter::flush() {
  if (file_ == nullptr || used_ == 0) return;
  const std::size_t done = std::fwrite(buffer_.data(), 1, used_, file_);
  if (meter_ != nullptr) meter_->add_written(done);
  if (done != used_) {
    throw StorageError(describe(path_, "short write to"));
  }
  used_ = 0;
}

void ByteWriter::patch(std::uint64_t offset, std::span<const std::byte> bytes) {
  flush();
  if (std::fseek(file_, static_cast<long>(offset), SEEK_SET) != 0) {
    throw StorageError(describe(path_, "cannot seek in"));
  }
  const std::size_t done = std::fwrite(bytes.data(), 1, bytes.size(), file_);
  if (meter_ != nullptr) meter_->add_written(done);
  if (done != bytes.size() || std::fseek(file_, 0, SEEK_END) != 0) {
    throw StorageError(describe(path_, "cannot patch"));
  }
}

void ByteWriter::close() {
  if (file_ == nullptr) return;
  flush();
  const int rc = std::fclose(std::exchange(file_, nullptr));
  if (rc != 0) throw StorageError(describe(path_, "cannot close"));
}

void ByteWriter::release() noexcept {
  if (file_ != nullptr) std::fclose(std::exchange(file_, nullptr));
}

// ---------------------------------------------------------------------------
// ByteReader

ByteReader::ByteReader(const std::filesystem::path& path, IoMeter* meter, std::size_t buffer_bytes)
    : path_(path), meter_(meter), buffer_(std::max<std::size_t>(buffer_bytes, 64)) {
  file_ = std::fopen(path.c_str(), "rb");
  if (file_ == nullptr) {
    throw StorageError(describe(path, "cannot open for reading"));
  }
}

ByteReader::~ByteReader() { release(); }

ByteReader::ByteReader(ByteReader&& other) noexcept
    : file_(std::exchange(other.file_, nullptr)),
      path_(std::move(other.path_)),
      meter_(other.meter_),
      buffer_(std::move(other.buffer_)),
      begin_(std::exchange(other.begin_, 0)),
      end_(std::exchange(other.end_, 0)),
      eof_(other.eof_) {}

ByteReader& ByteReader::operator=(ByteReader&& other) noexcept {
  if (this != &other) {
    release();
    file_ = std::exchange(other.file_, nullptr);
    path_ = std::move(other.path_);
    meter_ = other.meter_;
    buffer_ = std::move(other.buffer_);
    begin_ = std::exchange(other.begin_, 0);
    end_ = std::exchange(other.end_, 0);
    eof_ = other.eof_;
  }
  return *this;
}

bool ByteReader::refill() {
  if (eof_ || file_ == nullptr) return false;
  if (begin_ < end_) {
    std::memmove(buffer_.data(), buffer_.data() + begin_, end_ - begin_);
  }
  end_ -= begin_;
  begin_ = 0;
  const std::size_t got = std::fread(buffer_.data() + end_, 1, buffer_.size() - end_, file_);
  if (meter_ != nullptr) meter_->add_read(got);
  if (got == 0) {
    if (std::ferror(file_)) throw StorageError(describe(path_, "read error on"));
    eof_ = true;
    return false;
  }
  end_ += got;
  return true;
}

bool ByteReader::read(std::span<std::byte> out) {
  std::size_t copied = 0;
  while (copied < out.size()) {
    if (begin_ == end_ && !refill()) {
      if (copied == 0) return false;
      throw FormatError("truncated file '" + path_.string() + "'");
    }
    const std::size_t take = std::min(out.size() - copied, end_ - begin_);
    std::memcpy(out.data() + copied, buffer_.data() + begin_, take);
    begin_ += take;
    copied += take;
  }
  return true;
}

void ByteReader::read_exact(std::span<std::byte> out) {
  if (!read(out)) throw FormatError("unexpected end of file '" + path_.string() + "'");
}

std::uint32_t ByteReader::read_u32() {
  std::uint64_t v = 0;
  if (!try_read_id(4, v)) throw FormatError("unexpected end of file '" + path_.string() + "'");
  return static_cast<std::uint32_t>(v);
}

std::uint64_t ByteReader::read_u64() {
  std::uint64_t v = 0;
  if (!try_read_id(8, v)) throw FormatError("unexpected end of file '" + path_.string() + "'");
  return v;
}

bool ByteReader::try_read_id(unsigned width, std::uint64_t& value) {
  if (end_ - begin_ < width) {
    refill();
    if (end_ == begin_) return false;
    if (end_ - begin_ < width) throw FormatError("truncated record in '" + path_.string() + "'");
  }
  value = load_le(buffer_.data() + begin_, width);
  begin_ += width;
  return true;
}

void ByteReader::close() { release(); }

void ByteReader::release() noexcept {
  if (file_ != nullptr) std::fclose(std::exchange(file_, nullptr));
}

}  // namespace sebfs::graphio
