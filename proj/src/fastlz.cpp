#include <algorithm>
#include <cstring>
#include <vector>

#include "rlz/codecs.hpp"
#include "rlz/errors.hpp"

namespace rlz {
namespace {

constexpr size_t kMinMatch = 4;
constexpr size_t kMaxMatch = 131;   // 7-bit length field + kMinMatch
constexpr size_t kMaxDistance = 65535;
constexpr size_t kMaxRun = 127;
constexpr int kHashBits = 15;
constexpr int kChainDepth = 32;

uint32_t hash4(const char* p) {
  uint32_t v;
  std::memcpy(&v, p, 4);
  return (v * 2654435761u) >> (32 - kHashBits);
}

}  // namespace

std::string fastlz_compress(std::string_view data) {
  const size_t n = data.size();
  std::string out;
  out.reserve(n + n / kMaxRun + 8);

  size_t lit_start = 0;
  auto flush_literals = [&](size_t upto) {
    for (size_t i = lit_start; i < upto;) {
      const size_t take = std::min(kMaxRun, upto - i);
      out.push_back(static_cast<char>(take));
      out.append(data.substr(i, take));
      i += take;
    }
    lit_start = upto;
  };

  if (n >= kMinMatch) {
    std::vector<int32_t> head(size_t{1} << kHashBits, -1);
    std::vector<int32_t> prev(n, -1);
    auto insert = [&](size_t i) {
      const uint32_t h = hash4(data.data() + i);
      prev[i] = head[h];
      head[h] = static_cast<int32_t>(i);
    };

    size_t pos = 0;
    while (pos + kMinMatch <= n) {
      const size_t limit = std::min(kMaxMatch, n - pos);
      size_t best_len = 0, best_dist = 0;
      int32_t cand = head[hash4(data.data() + pos)];
      for (int depth = 0; cand >= 0 && depth < kChainDepth; ++depth) {
        const size_t dist = pos - static_cast<size_t>(cand);
        if (dist > kMaxDistance) break;  // chain only gets older
        size_t len = 0;
        while (len < limit && data[cand + len] == data[pos + len]) ++len;
        if (len > best_len) {
          best_len = len;
          best_dist = dist;
          if (len == limit) break;
        }
        cand = prev[cand];
      }
      if (best_len >= kMinMatch) {
        flush_literals(pos);
        out.push_back(static_cast<char>(0x80 | (best_len - kMinMatch)));
        out.push_back(static_cast<char>(best_dist & 0xff));
        out.push_back(static_cast<char>(best_dist >> 8));
        const size_t end = pos + best_len;
        for (; pos < end && pos + kMinMatch <= n; ++pos) insert(pos);
        pos = end;
        lit_start = end;
      } else {
        insert(pos);
        ++pos;
      }
    }
  }
  flush_literals(n);
  return out;
}

std::string fastlz_decompress(std::string_view blob, uint64_t expected_len) {
  std::string out;
  out.reserve(expected_len);
  size_t i = 0;
  while (i < blob.size()) {
    const uint8_t c = static_cast<uint8_t>(blob[i++]);
    if ((c & 0x80) == 0) {
      if (c == 0) throw CorruptionError("zero-length literal run");
      if (i + c > blob.size()) throw CorruptionError("literal run truncated");
      out.append(blob.substr(i, c));
      i += c;
    } else {
      const size_t len = (c & 0x7f) + kMinMatch;
      if (i + 2 > blob.size()) throw CorruptionError("copy token truncated");
      const size_t dist = static_cast<uint8_t>(blob[i]) |
                          (static_cast<size_t>(static_cast<uint8_t>(blob[i + 1])) << 8);
      i += 2;
      if (dist == 0 || dist > out.size())
        throw CorruptionError("copy distance out of range");
      const size_t src = out.size() - dist;
      for (size_t k = 0; k < len; ++k) out.push_back(out[src + k]);  // overlap ok
    }
    if (out.size() > expected_len)
      throw CorruptionError("output overruns declared length");
  }
  if (out.size() != expected_len)
    throw CorruptionError("output shorter than declared length");
  return out;
}

}  // namespace rlz
