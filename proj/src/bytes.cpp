#include "rlz/bytes.hpp"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstring>

#include "rlz/errors.hpp"

namespace rlz {

std::string ByteSource::slice(uint64_t offset, size_t len) const {
  std::string out(len, '\0');
  size_t got = read_at(offset, out.data(), len);
  if (got != len) {
    throw IoError("short read at offset " + std::to_string(offset));
  }
  return out;
}

std::string ByteSource::read_all() const { return slice(0, size()); }

size_t MemorySource::read_at(uint64_t offset, char* out, size_t len) const {
  if (offset >= data_.size()) return 0;
  size_t n = std::min<uint64_t>(len, data_.size() - offset);
  std::memcpy(out, data_.data() + offset, n);
  return n;
}

FileSource::FileSource(const std::string& path) {
  fd_ = ::open(path.c_str(), O_RDONLY);
  if (fd_ < 0) {
    throw IoError("cannot open " + path + ": " + std::strerror(errno));
  }
  struct stat st{};
  if (::fstat(fd_, &st) != 0) {
    int err = errno;
    ::close(fd_);
    fd_ = -1;
    throw IoError("cannot stat " + path + ": " + std::strerror(err));
  }
  size_ = static_cast<uint64_t>(st.st_size);
}

FileSource::~FileSource() {
  if (fd_ >= 0) ::close(fd_);
}

size_t FileSource::read_at(uint64_t offset, char* out, size_t len) const {
  size_t done = 0;
  while (done < len) {
    ssize_t n = ::pread(fd_, out + done, len - done,
                        static_cast<off_t>(offset + done));
    if (n < 0) {
      if (errno == EINTR) continue;
      throw IoError(std::string("read failed: ") + std::strerror(errno));
    }
    if (n == 0) break;  // EOF
    done += static_cast<size_t>(n);
  }
  return done;
}

void ConcatSource::append(std::unique_ptr<ByteSource> part) {
  starts_.push_back(total_);
  total_ += part->size();
  parts_.push_back(std::move(part));
}

size_t ConcatSource::read_at(uint64_t offset, char* out, size_t len) const {
  if (offset >= total_) return 0;
  size_t done = 0;
  // first part containing offset
  size_t i = static_cast<size_t>(
      std::upper_bound(starts_.begin(), starts_.end(), offset) -
      starts_.begin() - 1);
  while (done < len && i < parts_.size()) {
    uint64_t local = offset + done - starts_[i];
    size_t got = parts_[i]->read_at(local, out + done, len - done);
    done += got;
    if (local + got < parts_[i]->size()) break;  // genuine short read
    ++i;
  }
  return done;
}

void append_u16le(std::string& out, uint16_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
}

void append_u32le(std::string& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void append_u64le(std::string& out, uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

uint16_t read_u16le(std::string_view in, size_t pos) {
  if (pos + 2 > in.size()) throw CorruptionError("truncated u16 field");
  return static_cast<uint16_t>(static_cast<uint8_t>(in[pos]) |
                               (static_cast<uint8_t>(in[pos + 1]) << 8));
}

uint32_t read_u32le(std::string_view in, size_t pos) {
  if (pos + 4 > in.size()) throw CorruptionError("truncated u32 field");
  uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<uint8_t>(in[pos + i]);
  return v;
}

uint64_t read_u64le(std::string_view in, size_t pos) {
  if (pos + 8 > in.size()) throw CorruptionError("truncated u64 field");
  uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | static_cast<uint8_t>(in[pos + i]);
  return v;
}

uint64_t fnv1a64(std::string_view data, uint64_t seed) {
  uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

uint64_t mix64(uint64_t h) {
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdull;
  h ^= h >> 33;
  h *= 0xc4ceb9fe1a85ec53ull;
  h ^= h >> 33;
  return h;
}

void log_warning(const std::string& msg) {
  std::fprintf(stderr, "warning: %s\n", msg.c_str());
}

}  // namespace rlz
