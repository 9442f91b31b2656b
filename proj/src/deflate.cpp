#include <zlib.h>

#include <cstring>
#include <limits>

#include "rlz/codecs.hpp"
#include "rlz/errors.hpp"

namespace rlz {
namespace {

constexpr int kWindowBits = -15;  // raw DEFLATE, no zlib wrapper
constexpr size_t kWindowSize = 32 * 1024;

std::string_view clamp_prime(std::string_view prime) {
  if (prime.size() > kWindowSize)
    prime.remove_prefix(prime.size() - kWindowSize);
  return prime;
}

}  // namespace

std::string deflate_compress(std::string_view data, std::string_view prime) {
  z_stream strm{};
  if (deflateInit2(&strm, Z_DEFAULT_COMPRESSION, Z_DEFLATED, kWindowBits, 8,
                   Z_DEFAULT_STRATEGY) != Z_OK)
    throw IoError("deflate initialisation failed");

  prime = clamp_prime(prime);
  if (!prime.empty() &&
      deflateSetDictionary(&strm, reinterpret_cast<const Bytef*>(prime.data()),
                           static_cast<uInt>(prime.size())) != Z_OK) {
    deflateEnd(&strm);
    throw IoError("deflate priming failed");
  }

  std::string out(deflateBound(&strm, data.size()), '\0');
  strm.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
  strm.avail_in = static_cast<uInt>(data.size());
  strm.next_out = reinterpret_cast<Bytef*>(out.data());
  strm.avail_out = static_cast<uInt>(out.size());
  const int rc = deflate(&strm, Z_FINISH);
  if (rc != Z_STREAM_END) {
    deflateEnd(&strm);
    throw IoError("deflate failed (rc " + std::to_string(rc) + ")");
  }
  out.resize(strm.total_out);
  deflateEnd(&strm);
  return out;
}

std::string deflate_decompress_prefix(std::string_view blob,
                                      std::string_view prime,
                                      uint64_t expected_len, size_t* consumed) {
  z_stream strm{};
  if (inflateInit2(&strm, kWindowBits) != Z_OK)
    throw IoError("inflate initialisation failed");

  // raw streams never signal Z_NEED_DICT; prime up front
  prime = clamp_prime(prime);
  if (!prime.empty() &&
      inflateSetDictionary(&strm, reinterpret_cast<const Bytef*>(prime.data()),
                           static_cast<uInt>(prime.size())) != Z_OK) {
    inflateEnd(&strm);
    throw CorruptionError("inflate priming rejected");
  }

  std::string out(expected_len, '\0');
  strm.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(blob.data()));
  strm.avail_in = static_cast<uInt>(blob.size());
  strm.next_out = reinterpret_cast<Bytef*>(out.data());
  strm.avail_out = static_cast<uInt>(out.size());
  const int rc = inflate(&strm, Z_FINISH);
  const uint64_t produced = strm.total_out;
  const size_t used = blob.size() - strm.avail_in;
  inflateEnd(&strm);
  if (rc != Z_STREAM_END || produced != expected_len)
    throw CorruptionError("deflate stream corrupt or truncated");
  if (consumed) *consumed = used;
  return out;
}

std::string deflate_decompress(std::string_view blob, std::string_view prime,
                               uint64_t expected_len) {
  size_t consumed = 0;
  std::string out = deflate_decompress_prefix(blob, prime, expected_len, &consumed);
  if (consumed != blob.size())
    throw CorruptionError("trailing bytes after deflate stream");
  return out;
}

}  // namespace rlz
