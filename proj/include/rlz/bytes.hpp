#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace rlz {

// Random-access view of an uncompressed byte stream. Implementations must be
// safe for concurrent read_at calls.
class ByteSource {
 public:
  virtual ~ByteSource() = default;

  virtual uint64_t size() const = 0;

  // Reads up to len bytes starting at offset. Returns the number of bytes
  // read; short reads happen only at end of stream.
  virtual size_t read_at(uint64_t offset, char* out, size_t len) const = 0;

  // Convenience: exact-length slice, throws IoError on short read.
  std::string slice(uint64_t offset, size_t len) const;

  std::string read_all() const;
};

class MemorySource final : public ByteSource {
 public:
  explicit MemorySource(std::string data) : data_(std::move(data)) {}

  uint64_t size() const override { return data_.size(); }
  size_t read_at(uint64_t offset, char* out, size_t len) const override;

  std::string_view view() const { return data_; }

 private:
  std::string data_;
};

// pread-backed file source; the fd is shared by all readers.
class FileSource final : public ByteSource {
 public:
  explicit FileSource(const std::string& path);
  ~FileSource() override;

  FileSource(const FileSource&) = delete;
  FileSource& operator=(const FileSource&) = delete;

  uint64_t size() const override { return size_; }
  size_t read_at(uint64_t offset, char* out, size_t len) const override;

 private:
  int fd_ = -1;
  uint64_t size_ = 0;
};

// Several sources presented as one logical concatenation.
class ConcatSource final : public ByteSource {
 public:
  void append(std::unique_ptr<ByteSource> part);

  uint64_t size() const override { return total_; }
  size_t read_at(uint64_t offset, char* out, size_t len) const override;

  size_t part_count() const { return parts_.size(); }
  uint64_t part_offset(size_t i) const { return starts_[i]; }
  uint64_t part_size(size_t i) const { return parts_[i]->size(); }

 private:
  std::vector<std::unique_ptr<ByteSource>> parts_;
  std::vector<uint64_t> starts_;
  uint64_t total_ = 0;
};

// Little-endian wire helpers shared by codecs and the archive container.
void append_u16le(std::string& out, uint16_t v);
void append_u32le(std::string& out, uint32_t v);
void append_u64le(std::string& out, uint64_t v);
uint16_t read_u16le(std::string_view in, size_t pos);
uint32_t read_u32le(std::string_view in, size_t pos);
uint64_t read_u64le(std::string_view in, size_t pos);

uint64_t fnv1a64(std::string_view data, uint64_t seed = 14695981039346656037ull);

// Order-independent combiner for multiset hashes of query results.
uint64_t mix64(uint64_t h);

void log_warning(const std::string& msg);

}  // namespace rlz
